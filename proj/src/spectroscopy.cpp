#include "ftqm/spectroscopy.hpp"

#include "ftqm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace ftqm {

double transition_frequency(const ThermalSpectrum& thermal, std::size_t i, std::size_t j,
                            const UnitSystem& units)
{
    const std::size_t n = thermal.levels.size();
    if (i >= n || j >= n) {
        throw InvalidInput("transition (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") is outside the " + std::to_string(n) + " available levels");
    }
    return (thermal.levels[i].E_T - thermal.levels[j].E_T) / units.h_planck();
}

double shift_slope(int g_i, int g_j, const UnitSystem& units)
{
    if (g_i < 1 || g_j < 1) {
        throw InvalidInput("degeneracies must be >= 1");
    }
    if (g_i == g_j) {
        return 0.0;
    }
    const double log_ratio = std::log(static_cast<double>(g_i)) - std::log(static_cast<double>(g_j));
    return units.k_B() * log_ratio / (2.0 * units.h_planck());
}

TransitionShift shift_between_temperatures(const ZeroTSpectrum& spectrum, std::size_t i,
                                           std::size_t j, double T1, double T2,
                                           const UnitSystem& units)
{
    if (!(T1 > 0.0) || !(T2 > 0.0) || !std::isfinite(T1) || !std::isfinite(T2)) {
        throw InvalidInput("shift temperatures must be positive and finite");
    }
    if (i >= spectrum.size() || j >= spectrum.size()) {
        throw InvalidInput("transition (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") is outside the " + std::to_string(spectrum.size()) +
                           " available levels");
    }
    TransitionShift out;
    out.i = i;
    out.j = j;
    out.T1 = T1;
    out.T2 = T2;
    out.nu_T1 = transition_frequency(thermal_energies(spectrum, T1, units), i, j, units);
    out.nu_T2 = transition_frequency(thermal_energies(spectrum, T2, units), i, j, units);
    out.delta_nu = out.nu_T1 - out.nu_T2;
    out.slope = shift_slope(spectrum[i].g, spectrum[j].g, units);
    out.closed_form_delta = out.slope * (T1 - T2);

    const double scale =
        std::max({std::abs(out.nu_T1), std::abs(out.nu_T2), std::abs(out.closed_form_delta)});
    if (std::abs(out.delta_nu - out.closed_form_delta) > kShiftCrossCheckTolerance * scale) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "shift cross-check failed for (" << i << ", " << j << "): two-solve difference "
            << out.delta_nu << " vs closed form " << out.closed_form_delta;
        throw ConsistencyError(msg.str());
    }
    return out;
}

} // namespace ftqm
