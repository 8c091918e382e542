#include "ftqm/oscillator.hpp"

#include "ftqm/error.hpp"

#include <cmath>
#include <numbers>

namespace ftqm {

namespace {

void check(const OscillatorParams& params)
{
    if (!(params.omega_osc > 0.0) || !(params.mass > 0.0)) {
        throw InvalidInput("oscillator needs omega_osc > 0 and mass > 0");
    }
}

} // namespace

double ho_energy_zero_T(int n, const OscillatorParams& params, const UnitSystem& units)
{
    check(params);
    if (n < 0) {
        throw InvalidInput("level index must be >= 0");
    }
    return (n + 0.5) * units.hbar() * params.omega_osc;
}

double ho_sqrt_partition(const OscillatorParams& params, double T, const UnitSystem& units)
{
    check(params);
    const double a = units.hbar() * params.omega_osc * beta_of(T, units);
    return std::exp(-0.25 * a) / -std::expm1(-0.5 * a);
}

double ho_energy_thermal(int n, const OscillatorParams& params, double T, const UnitSystem& units)
{
    check(params);
    if (n < 0) {
        throw InvalidInput("level index must be >= 0");
    }
    if (!(T >= 0.0)) {
        throw InvalidInput("temperature must be >= 0");
    }
    if (T == 0.0) {
        return ho_energy_zero_T(n, params, units);
    }
    const double quantum = units.hbar() * params.omega_osc;
    const double kT = units.k_B() * T;
    return 0.5 * (n + 1) * quantum + kT * std::log1p(-std::exp(-quantum / (2.0 * kT)));
}

ZeroTSpectrum ho_spectrum(const OscillatorParams& params, std::size_t count, const UnitSystem& units)
{
    if (count < 1) {
        throw InvalidInput("need at least one level");
    }
    std::vector<ZeroTLevel> levels(count);
    for (std::size_t n = 0; n < count; ++n) {
        levels[n].E0 = ho_energy_zero_T(static_cast<int>(n), params, units);
    }
    return ZeroTSpectrum(std::move(levels), SpectrumExtent::truncated);
}

std::vector<double> ho_ground_state(const OscillatorParams& params, const Grid1D& grid,
                                    const UnitSystem& units)
{
    check(params);
    const double alpha = params.mass * params.omega_osc / units.hbar();
    const double norm = std::pow(alpha / std::numbers::pi, 0.25);
    std::vector<double> psi(grid.size());
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const double x = grid.x(k);
        psi[k] = norm * std::exp(-0.5 * alpha * x * x);
    }
    return psi;
}

} // namespace ftqm
