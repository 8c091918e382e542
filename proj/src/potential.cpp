#include "ftqm/potential.hpp"

#include "ftqm/error.hpp"
#include "overloaded.hpp"

#include <cmath>
#include <string>

namespace ftqm {

using detail::overloaded;

std::vector<double> eval_potential(const PotentialSpec& spec, const Grid1D& grid)
{
    if (!std::isfinite(spec.offset)) {
        throw InvalidInput("potential offset must be finite");
    }
    std::vector<double> values = std::visit(
        overloaded{
            [&](const HarmonicPotential& ho) {
                if (!(ho.mass > 0.0) || !(ho.omega_osc > 0.0)) {
                    throw InvalidInput("harmonic potential needs mass > 0 and omega_osc > 0");
                }
                const double k = 0.5 * ho.mass * ho.omega_osc * ho.omega_osc;
                std::vector<double> v(grid.size());
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const double x = grid.x(i);
                    v[i] = k * x * x;
                }
                return v;
            },
            [&](const InfiniteWell& well) {
                const double extent = grid.x_max() - grid.x_min();
                if (!(well.width > 0.0) || std::abs(well.width - extent) > 1e-9 * extent) {
                    throw InvalidInput("infinite well width " + std::to_string(well.width) +
                                       " does not match the grid extent " + std::to_string(extent));
                }
                return std::vector<double>(grid.size(), 0.0);
            },
            [&](const TabulatedPotential& tab) {
                if (tab.values.size() != grid.size()) {
                    throw InvalidInput("tabulated potential has " + std::to_string(tab.values.size()) +
                                       " values for a grid of " + std::to_string(grid.size()) +
                                       " points");
                }
                for (double v : tab.values) {
                    if (!std::isfinite(v)) {
                        throw InvalidInput("tabulated potential contains a non-finite value");
                    }
                }
                return tab.values;
            },
        },
        spec.shape);
    if (spec.offset != 0.0) {
        for (double& v : values) {
            v += spec.offset;
        }
    }
    return values;
}

} // namespace ftqm
