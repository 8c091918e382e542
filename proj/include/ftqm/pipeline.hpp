#pragma once

#include "ftqm/eigensolver.hpp"
#include "ftqm/units.hpp"

#include <cstddef>
#include <span>

namespace ftqm {

/// Solves for at least `min_levels` levels, doubling the count until the
/// partition-sum tail bound holds at every positive temperature given.
/// With an explicit degeneracy table the count is fixed to the table length.
/// Throws ConvergenceError when the grid runs out of levels first.
ZeroTSpectrum converged_spectrum(const TridiagonalHamiltonian& H, std::size_t min_levels,
                                 const DegeneracyPolicy& policy,
                                 std::span<const double> temperatures, const UnitSystem& units);

} // namespace ftqm
