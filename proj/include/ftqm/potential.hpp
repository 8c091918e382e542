#pragma once

#include "ftqm/grid.hpp"

#include <variant>
#include <vector>

namespace ftqm {

/// V(x) = 1/2 m omega^2 x^2
struct HarmonicPotential {
    double mass = 1.0;
    double omega_osc = 1.0;
};

/// V = 0 between walls at the grid ends. The width must match the grid
/// extent; the walls themselves are Dirichlet boundaries, not large values.
struct InfiniteWell {
    double width = 1.0;
};

/// One value per grid node.
struct TabulatedPotential {
    std::vector<double> values;
};

using PotentialShape = std::variant<HarmonicPotential, InfiniteWell, TabulatedPotential>;

struct PotentialSpec {
    PotentialShape shape;
    double offset = 0.0;
};

/// Samples the potential on every grid node (offset included).
std::vector<double> eval_potential(const PotentialSpec& spec, const Grid1D& grid);

} // namespace ftqm
