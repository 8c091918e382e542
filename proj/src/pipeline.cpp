#include "ftqm/pipeline.hpp"

#include "ftqm/error.hpp"
#include "ftqm/thermal.hpp"

#include <algorithm>
#include <string>
#include <variant>

namespace ftqm {

ZeroTSpectrum converged_spectrum(const TridiagonalHamiltonian& H, std::size_t min_levels,
                                 const DegeneracyPolicy& policy,
                                 std::span<const double> temperatures, const UnitSystem& units)
{
    auto tail_ok = [&](const ZeroTSpectrum& spectrum) {
        for (double T : temperatures) {
            if (T > 0.0 && !(truncation_tail_ratio(spectrum, T, units) < kTailTolerance)) {
                return false;
            }
        }
        return true;
    };

    if (const auto* table = std::get_if<ExplicitDegeneracies>(&policy)) {
        ZeroTSpectrum spectrum = assign_degeneracies(solve_spectrum(H, table->g.size()), policy);
        if (!tail_ok(spectrum)) {
            throw ConvergenceError("the " + std::to_string(table->g.size()) +
                                   " levels of the degeneracy table do not satisfy the partition "
                                   "tail bound at every requested temperature");
        }
        return spectrum;
    }

    std::size_t count = std::clamp<std::size_t>(min_levels, 1, H.dimension());
    for (;;) {
        ZeroTSpectrum spectrum = assign_degeneracies(solve_spectrum(H, count), policy);
        if (tail_ok(spectrum)) {
            return spectrum;
        }
        if (count == H.dimension()) {
            throw ConvergenceError("grid supports only " + std::to_string(count) +
                                   " levels, not enough for the partition tail bound");
        }
        count = std::min(2 * count, H.dimension());
    }
}

} // namespace ftqm
