#include "doctest.h"

#include "oracles.hpp"

#include "ftqm/error.hpp"
#include "ftqm/oscillator.hpp"
#include "ftqm/spectroscopy.hpp"
#include "ftqm/thermal.hpp"

#include <cmath>
#include <numbers>

using namespace ftqm;

namespace {

const UnitSystem kNatural = UnitSystem::natural();
const double kTwoPi = 2.0 * std::numbers::pi;

/// Hydrogen-like ladder: E_n = -1/(2 n^2), g_n = n^2, n = 1..K, complete.
ZeroTSpectrum hydrogen_like(int K)
{
    std::vector<double> E;
    std::vector<int> g;
    for (int n = 1; n <= K; ++n) {
        E.push_back(-0.5 / (n * n));
        g.push_back(n * n);
    }
    return ZeroTSpectrum::from_energies(E, g, SpectrumExtent::complete);
}

} // namespace

TEST_CASE("transition frequency")
{
    const ZeroTSpectrum two = ZeroTSpectrum::from_energies(std::vector<double>{0.0, 1.0},
                                                           std::vector<int>{1, 1},
                                                           SpectrumExtent::complete);
    const ThermalSpectrum th = thermal_energies(two, 1.0, kNatural);
    CHECK(transition_frequency(th, 1, 1, kNatural) == 0.0);
    CHECK(transition_frequency(th, 1, 0, kNatural) == doctest::Approx(0.5 / kTwoPi).epsilon(1e-14));
    CHECK(transition_frequency(th, 0, 1, kNatural) == -transition_frequency(th, 1, 0, kNatural));
    CHECK_THROWS_AS(transition_frequency(th, 2, 0, kNatural), InvalidInput);

    const ZeroTSpectrum ho = ho_spectrum(OscillatorParams{1.0, 1.0}, 300, kNatural);
    for (double T : {0.3, 1.0, 3.0}) {
        const ThermalSpectrum t = thermal_energies(ho, T, kNatural);
        for (std::size_t n = 0; n < 8; ++n) {
            CHECK(transition_frequency(t, n + 1, n, kNatural) ==
                  doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-12));
        }
    }
}

TEST_CASE("shift slope")
{
    CHECK(shift_slope(3, 3, kNatural) == 0.0);
    CHECK(shift_slope(4, 1, kNatural) == doctest::Approx(std::log(4.0) / (2.0 * kTwoPi)));
    CHECK(shift_slope(1, 4, kNatural) == -shift_slope(4, 1, kNatural));
    CHECK_THROWS_AS(shift_slope(0, 1, kNatural), InvalidInput);
}

TEST_CASE("shift between temperatures examples")
{
    const ZeroTSpectrum h = hydrogen_like(6);

    const ZeroTSpectrum equal = ZeroTSpectrum::from_energies(
        std::vector<double>{0.0, 0.7, 2.0}, std::vector<int>{2, 2, 5}, SpectrumExtent::complete);
    const TransitionShift same = shift_between_temperatures(equal, 1, 0, 3.0, 0.4, kNatural);
    CHECK(same.closed_form_delta == 0.0);
    CHECK(std::abs(same.delta_nu) <= 1e-12);
    CHECK(same.slope == 0.0);

    const TransitionShift s = shift_between_temperatures(h, 1, 0, 2.0, 1.0, kNatural);
    CHECK(s.closed_form_delta == doctest::Approx(std::log(4.0) / (4.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(s.delta_nu == doctest::Approx(0.110317800076).epsilon(1e-10));
    CHECK(s.delta_nu == doctest::Approx(s.nu_T1 - s.nu_T2).epsilon(1e-12));
    CHECK(s.slope * (s.T1 - s.T2) == doctest::Approx(s.closed_form_delta).epsilon(1e-12));

    const TransitionShift doubled = shift_between_temperatures(h, 1, 0, 3.0, 1.0, kNatural);
    CHECK(doubled.closed_form_delta == doctest::Approx(2.0 * s.closed_form_delta).epsilon(1e-14));
    CHECK(doubled.delta_nu == doctest::Approx(2.0 * s.delta_nu).epsilon(1e-10));

    CHECK_THROWS_AS(shift_between_temperatures(h, 1, 0, 0.0, 1.0, kNatural), InvalidInput);
    CHECK_THROWS_AS(shift_between_temperatures(h, 1, 0, 1.0, -1.0, kNatural), InvalidInput);
    CHECK_THROWS_AS(shift_between_temperatures(h, 9, 0, 1.0, 2.0, kNatural), InvalidInput);
}

TEST_CASE("cross-check, linearity and antisymmetry on random spectra")
{
    oracle::Rng rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> E(8);
        std::vector<int> g(8);
        double e = rng.uniform(-3.0, 0.0);
        for (std::size_t k = 0; k < E.size(); ++k) {
            E[k] = e;
            e += rng.uniform(0.1, 2.0);
            g[k] = rng.integer(1, 16);
        }
        const ZeroTSpectrum s = ZeroTSpectrum::from_energies(E, g, SpectrumExtent::complete);
        const std::size_t i = static_cast<std::size_t>(rng.integer(0, 7));
        const std::size_t j = static_cast<std::size_t>(rng.integer(0, 7));
        const double T2 = rng.uniform(0.2, 2.0);
        const double dT = rng.uniform(0.1, 2.0);

        const TransitionShift a = shift_between_temperatures(s, i, j, T2 + dT, T2, kNatural);
        const double scale = std::max({std::abs(a.nu_T1), std::abs(a.nu_T2), std::abs(a.closed_form_delta)});
        CHECK(std::abs(a.delta_nu - a.closed_form_delta) <= 1e-10 * std::max(scale, 1e-300));

        // Three equally spaced temperature differences: second difference vanishes.
        const double d1 = shift_between_temperatures(s, i, j, T2 + dT, T2, kNatural).closed_form_delta;
        const double d2 = shift_between_temperatures(s, i, j, T2 + 2 * dT, T2, kNatural).closed_form_delta;
        const double d3 = shift_between_temperatures(s, i, j, T2 + 3 * dT, T2, kNatural).closed_form_delta;
        CHECK(std::abs(d3 - 2.0 * d2 + d1) <= 1e-12 * std::max(std::abs(d3), 1e-300));

        const TransitionShift b = shift_between_temperatures(s, j, i, T2 + dT, T2, kNatural);
        CHECK(b.closed_form_delta == -a.closed_form_delta);
        CHECK(std::abs(b.delta_nu + a.delta_nu) <= 1e-12 * std::max(scale, 1e-300));
    }
}
