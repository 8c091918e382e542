#pragma once

#include "ftqm/eigensolver.hpp"
#include "ftqm/thermal.hpp"
#include "ftqm/units.hpp"

#include <cstddef>

namespace ftqm {

/// Agreement required between the closed-form shift and the difference of
/// two independent thermal solves, relative to the frequencies involved.
inline constexpr double kShiftCrossCheckTolerance = 1e-10;

/// nu_ij(T1) - nu_ij(T2) for one level pair.
struct TransitionShift {
    std::size_t i = 0;
    std::size_t j = 0;
    double T1 = 0.0;
    double T2 = 0.0;
    double nu_T1 = 0.0;
    double nu_T2 = 0.0;
    /// nu_T1 - nu_T2 from the two thermal solves.
    double delta_nu = 0.0;
    /// k_B / (2h) (T1 - T2) ln(g_i / g_j); exactly zero when g_i == g_j.
    double closed_form_delta = 0.0;
    double slope = 0.0;
};

/// (E_i(T) - E_j(T)) / h
double transition_frequency(const ThermalSpectrum& thermal, std::size_t i, std::size_t j,
                            const UnitSystem& units);

/// k_B ln(g_i / g_j) / (2h)
double shift_slope(int g_i, int g_j, const UnitSystem& units);

/// Computes the shift both ways and throws ConsistencyError when they
/// disagree beyond kShiftCrossCheckTolerance.
TransitionShift shift_between_temperatures(const ZeroTSpectrum& spectrum, std::size_t i,
                                           std::size_t j, double T1, double T2,
                                           const UnitSystem& units);

} // namespace ftqm
