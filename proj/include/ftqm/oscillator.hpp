#pragma once

#include "ftqm/eigensolver.hpp"
#include "ftqm/grid.hpp"
#include "ftqm/units.hpp"

#include <vector>

namespace ftqm {

/// omega_osc is the angular frequency, not a level degeneracy.
struct OscillatorParams {
    double omega_osc = 1.0;
    double mass = 1.0;
};

/// (n + 1/2) hbar omega
double ho_energy_zero_T(int n, const OscillatorParams& params, const UnitSystem& units);

/// exp(-hbar omega / (4 k_B T)) / (1 - exp(-hbar omega / (2 k_B T)))
double ho_sqrt_partition(const OscillatorParams& params, double T, const UnitSystem& units);

/// (n + 1)/2 hbar omega + k_B T ln(1 - exp(-hbar omega / (2 k_B T))) for T > 0.
/// T == 0 returns ho_energy_zero_T(n). The T -> 0+ limit of the finite-T
/// branch is (n + 1)/2 hbar omega, which differs from the T = 0 value for
/// n >= 1; both are kept as they are.
double ho_energy_thermal(int n, const OscillatorParams& params, double T, const UnitSystem& units);

/// Exact levels 0..count-1, all g = 1, marked truncated.
ZeroTSpectrum ho_spectrum(const OscillatorParams& params, std::size_t count,
                          const UnitSystem& units);

/// Normalized analytic ground state sampled on the grid.
std::vector<double> ho_ground_state(const OscillatorParams& params, const Grid1D& grid,
                                    const UnitSystem& units);

} // namespace ftqm
