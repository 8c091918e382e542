#include "doctest.h"

#include "oracles.hpp"

#include "ftqm/error.hpp"
#include "ftqm/thermal.hpp"

#include <cmath>
#include <numeric>

using namespace ftqm;

namespace {

const UnitSystem kNatural = UnitSystem::natural();

ZeroTSpectrum levels(std::vector<double> E, std::vector<int> g,
                     SpectrumExtent extent = SpectrumExtent::complete)
{
    return ZeroTSpectrum::from_energies(E, g, extent);
}

ZeroTSpectrum two_level() { return levels({0.0, 1.0}, {1, 1}); }

/// 10 ascending levels in [0, 10) with g in 1..9.
ZeroTSpectrum random_spectrum(oracle::Rng& rng)
{
    std::vector<double> E(10);
    double e = rng.uniform(-1.0, 1.0);
    for (double& v : E) {
        v = e;
        e += rng.uniform(0.05, 1.5);
    }
    std::vector<int> g(10);
    for (int& v : g) {
        v = rng.integer(1, 9);
    }
    return levels(E, g);
}

void check_invariants(const ThermalSpectrum& th)
{
    double weighted = 0.0;
    for (const ThermalLevel& level : th.levels) {
        weighted += level.g * level.p;
        CHECK(level.p > 0.0);
        CHECK(level.p <= 1.0);
    }
    CHECK(std::abs(weighted - 1.0) <= 1e-10);
    CHECK(th.sqrt_z > 0.0);
    const double Z = th.sqrt_z * th.sqrt_z;
    for (const ThermalLevel& level : th.levels) {
        CHECK(oracle::rel_diff(level.p * Z, std::exp(-th.beta * level.E_T)) <= 1e-10);
    }
}

} // namespace

TEST_CASE("sqrt_partition_closed examples")
{
    const auto ho = [] {
        std::vector<double> E(120);
        for (std::size_t i = 0; i < E.size(); ++i) {
            E[i] = i + 0.5;
        }
        return levels(E, std::vector<int>(E.size(), 1), SpectrumExtent::truncated);
    }();
    CHECK(sqrt_partition_closed(ho, 1.0, kNatural) ==
          doctest::Approx(std::exp(-0.25) / (1.0 - std::exp(-0.5))).epsilon(1e-13));
    std::vector<double> E60(60);
    for (std::size_t i = 0; i < E60.size(); ++i) {
        E60[i] = i + 0.5;
    }
    CHECK(sqrt_partition_closed(ho, 1.0, kNatural) ==
          doctest::Approx(oracle::direct_sqrt_z(E60, std::vector<int>(60, 1), 1.0)).epsilon(1e-12));

    CHECK(sqrt_partition_closed(two_level(), 1.0, kNatural) ==
          doctest::Approx(1.0 + std::exp(-0.5)).epsilon(1e-15));
    for (double T : {0.01, 1.0, 300.0}) {
        CHECK(sqrt_partition_closed(levels({0.0}, {1}), T, kNatural) == 1.0);
    }
}

TEST_CASE("sqrt_partition_closed errors")
{
    CHECK_THROWS_AS(sqrt_partition_closed(two_level(), 0.0, kNatural), InvalidInput);
    CHECK_THROWS_AS(sqrt_partition_closed(two_level(), -1.0, kNatural), InvalidInput);
    CHECK_THROWS_AS(levels({}, {}), InvalidInput);
    // Ten truncated HO levels cannot bound the tail at k_B T = 1.
    std::vector<double> E(10);
    std::iota(E.begin(), E.end(), 0.5);
    const ZeroTSpectrum short_ho = levels(E, std::vector<int>(10, 1), SpectrumExtent::truncated);
    CHECK(truncation_tail_ratio(short_ho, 1.0, kNatural) > kTailTolerance);
    CHECK_THROWS_AS(sqrt_partition_closed(short_ho, 1.0, kNatural), ConvergenceError);
    CHECK_NOTHROW(sqrt_partition_closed(short_ho, 0.05, kNatural));
    CHECK_THROWS_AS(sqrt_partition_closed(levels({0.0}, {1}, SpectrumExtent::truncated), 1.0,
                                          kNatural),
                    ConvergenceError);
}

TEST_CASE("tail ratio matches its definition")
{
    std::vector<double> E(40);
    std::iota(E.begin(), E.end(), 0.5);
    const ZeroTSpectrum s = levels(E, std::vector<int>(40, 1), SpectrumExtent::truncated);
    const double kT = 0.7;
    const double total = oracle::direct_sqrt_z(E, std::vector<int>(40, 1), kT);
    const double t_last = std::exp(-E[39] / (2 * kT));
    const double r = t_last / std::exp(-E[38] / (2 * kT));
    CHECK(truncation_tail_ratio(s, kT, kNatural) ==
          doctest::Approx(t_last / (1.0 - r) / total).epsilon(1e-12));
    CHECK(truncation_tail_ratio(levels(E, std::vector<int>(40, 1)), kT, kNatural) == 0.0);
}

TEST_CASE("thermal_energies two-level example")
{
    const ThermalSpectrum th = thermal_energies(two_level(), 1.0, kNatural);
    // Oracle: solve the self-consistency by iteration instead of the closed form.
    const double sz = fixed_point_partition(two_level(), 1.0, kNatural).sqrt_z;
    CHECK(th.sqrt_z == doctest::Approx(sz).epsilon(1e-11));
    CHECK(th.levels[0].E_T == doctest::Approx(-std::log(sz)).epsilon(1e-12));
    CHECK(th.levels[1].E_T == doctest::Approx(0.5 - std::log(sz)).epsilon(1e-12));
    CHECK(th.levels[0].E_T == doctest::Approx(-0.474076984180).epsilon(1e-10));
    CHECK(th.levels[1].E_T == doctest::Approx(0.025923015820).epsilon(1e-9));
    CHECK(th.levels[0].p == doctest::Approx(0.622459331202).epsilon(1e-10));
    CHECK(th.levels[1].p == doctest::Approx(0.377540668798).epsilon(1e-10));
    check_invariants(th);
}

TEST_CASE("thermal_energies at T = 0 returns the zero-temperature levels")
{
    const ZeroTSpectrum s = levels({-2.0, 0.3, 1.7}, {3, 1, 5}, SpectrumExtent::truncated);
    const ThermalSpectrum th = thermal_energies(s, 0.0, kNatural);
    REQUIRE(th.levels.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(th.levels[i].E_T == s[i].E0);
        CHECK(th.levels[i].g == s[i].g);
    }
    CHECK(th.levels[0].p == doctest::Approx(1.0 / 3.0));
    CHECK(th.levels[1].p == 0.0);
    CHECK(std::isinf(th.beta));
    CHECK(th.sqrt_z == doctest::Approx(std::sqrt(3.0)));
    CHECK_THROWS_AS(thermal_energies(s, -0.1, kNatural), InvalidInput);
}

TEST_CASE("fixed_point_partition behaviour")
{
    const ZeroTSpectrum single = levels({0.0}, {1});
    const FixedPointResult one = fixed_point_partition(single, 2.0, kNatural);
    CHECK(one.sqrt_z == 1.0);
    CHECK(one.iterations == 1);

    CHECK_THROWS_AS(fixed_point_partition(two_level(), 1.0, kNatural, {0.0, 500, 1.0}),
                    InvalidInput);
    CHECK_THROWS_AS(fixed_point_partition(two_level(), 1.0, kNatural, {1e-12, 500, 0.0}),
                    InvalidInput);
    CHECK_THROWS_AS(fixed_point_partition(two_level(), 1.0, kNatural, {1e-12, 500, 1.5}),
                    InvalidInput);
    CHECK_THROWS_AS(fixed_point_partition(two_level(), 0.0, kNatural), InvalidInput);
    try {
        fixed_point_partition(two_level(), 1.0, kNatural, {1e-15, 3, 1.0});
        FAIL("expected non-convergence");
    } catch (const ConvergenceError& e) {
        CHECK(std::string(e.what()).find("last iterates") != std::string::npos);
    }

    const FixedPointResult damped = fixed_point_partition(two_level(), 1.0, kNatural, {1e-12, 500, 0.5});
    CHECK(damped.sqrt_z == doctest::Approx(1.0 + std::exp(-0.5)).epsilon(1e-11));
}

TEST_CASE("closed form and fixed point agree on random spectra")
{
    oracle::Rng rng(20240611);
    for (int trial = 0; trial < 100; ++trial) {
        const ZeroTSpectrum s = random_spectrum(rng);
        for (double T : {0.1, 0.5, 1.0, 2.0}) {
            const double closed = sqrt_partition_closed(s, T, kNatural);
            const double iterated = fixed_point_partition(s, T, kNatural).sqrt_z;
            CHECK(oracle::rel_diff(closed, iterated) <= 1e-10);
            CHECK(oracle::rel_diff(closed, oracle::direct_sqrt_z(s.energies(), s.degeneracies(), T)) <=
                  1e-13);
        }
    }
}

TEST_CASE("thermal invariants on random spectra")
{
    oracle::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const ZeroTSpectrum s = random_spectrum(rng);
        const double T = rng.uniform(0.05, 5.0);
        check_invariants(thermal_energies(s, T, kNatural));
    }
}

TEST_CASE("equal degeneracies: ordering kept and gaps halved")
{
    oracle::Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const ZeroTSpectrum base = random_spectrum(rng);
        const int g = rng.integer(1, 9);
        const ZeroTSpectrum s = levels(base.energies(), std::vector<int>(base.size(), g));
        const double T = rng.uniform(0.1, 3.0);
        const ThermalSpectrum th = thermal_energies(s, T, kNatural);
        for (std::size_t i = 1; i < s.size(); ++i) {
            CHECK(th.levels[i].E_T > th.levels[i - 1].E_T);
            const double gap_T = th.levels[i].E_T - th.levels[0].E_T;
            const double gap_0 = 0.5 * (s[i].E0 - s[0].E0);
            CHECK(std::abs(gap_T - gap_0) <= 1e-12 * std::max(1.0, std::abs(gap_0)));
        }
    }
}

TEST_CASE("microscopic entropy and single-particle free energy")
{
    CHECK(microscopic_entropy(1, 1.0, kNatural) == 0.0);
    CHECK(microscopic_entropy(1, 0.5, kNatural) == doctest::Approx(std::log(2.0)));
    CHECK(microscopic_entropy(2, 0.5, kNatural) == 0.0);
    CHECK_THROWS_AS(microscopic_entropy(1, 0.0, kNatural), InvalidInput);
    CHECK_THROWS_AS(microscopic_entropy(1, -0.2, kNatural), InvalidInput);
    CHECK_THROWS_AS(microscopic_entropy(0, 0.5, kNatural), InvalidInput);

    CHECK(single_particle_free_energy(1.25, -0.5, 3, 0.1, 0.0, kNatural) == 0.75);
    CHECK(std::abs(single_particle_free_energy(1.0, 0.0, 1, std::exp(-1.0), 1.0, kNatural)) <=
          1e-15);
    CHECK(single_particle_free_energy(0.4, 0.6, 2, 0.5, 3.0, kNatural) == doctest::Approx(1.0));
    CHECK_THROWS_AS(single_particle_free_energy(1.0, 0.0, 1, 0.0, 1.0, kNatural), InvalidInput);

    const UnitSystem si = UnitSystem::make(1.054571817e-34, 1.380649e-23, 9.1093837015e-31);
    CHECK(microscopic_entropy(1, 0.5, si) == doctest::Approx(1.380649e-23 * std::log(2.0)));
}

TEST_CASE("ensemble aggregates examples")
{
    EnsembleDescription one{{Microstate{1.0, {ParticleRecord{1.0, 0.0, 1, 1.0}}, 0.0}}};
    EnsembleAggregates a = ensemble_aggregates(one, 2.0, kNatural);
    CHECK(a.U == 1.0);
    CHECK(a.S == 0.0);
    CHECK(a.F == 1.0);

    EnsembleDescription two{{Microstate{0.5, {ParticleRecord{1.0, 0.0, 1, 1.0}}, 0.0},
                             Microstate{0.5, {ParticleRecord{0.0, 1.0, 1, 1.0}}, 0.0}}};
    a = ensemble_aggregates(two, 0.7, kNatural);
    CHECK(a.U == 1.0);
    CHECK(a.S == 0.0);
    CHECK(a.F == 1.0);

    EnsembleDescription bad{{Microstate{0.6, {ParticleRecord{}}, 0.0}}};
    CHECK_THROWS_AS(ensemble_aggregates(bad, 1.0, kNatural), InvalidInput);
    EnsembleDescription bad_p{{Microstate{1.0, {ParticleRecord{0.0, 0.0, 1, 1.5}}, 0.0}}};
    CHECK_THROWS_AS(ensemble_aggregates(bad_p, 1.0, kNatural), InvalidInput);
    EnsembleDescription bad_P{{Microstate{1.5, {}, 0.0}, Microstate{-0.5, {}, 0.0}}};
    CHECK_THROWS_AS(validate(bad_P), InvalidInput);
    CHECK_THROWS_AS(validate(EnsembleDescription{}), InvalidInput);
}

TEST_CASE("F = U - T S closure on random ensembles")
{
    oracle::Rng rng(314159);
    for (int trial = 0; trial < 100; ++trial) {
        EnsembleDescription ens;
        const int M = rng.integer(1, 6);
        std::vector<double> w(static_cast<std::size_t>(M));
        for (double& v : w) {
            v = rng.uniform(0.01, 1.0);
        }
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        double assigned = 0.0;
        for (int i = 0; i < M; ++i) {
            Microstate state;
            state.P = i + 1 == M ? 1.0 - assigned : w[static_cast<std::size_t>(i)] / total;
            assigned += state.P;
            const int N = rng.integer(1, 5);
            for (int j = 0; j < N; ++j) {
                state.particles.push_back(ParticleRecord{rng.uniform(0.0, 5.0), rng.uniform(-5.0, 5.0),
                                                         rng.integer(1, 9), rng.uniform(1e-3, 1.0)});
            }
            ens.states.push_back(state);
        }
        const double T = rng.uniform(0.0, 4.0);
        const EnsembleAggregates a = ensemble_aggregates(ens, T, kNatural);

        // Independent sums in a different order.
        double U = 0.0, S = 0.0;
        for (const Microstate& s : ens.states) {
            for (const ParticleRecord& r : s.particles) {
                U += s.P * r.kin + s.P * r.pot;
                S -= s.P * std::log(static_cast<double>(r.g)) + s.P * std::log(r.p);
            }
        }
        const double scale = std::max({std::abs(a.F), std::abs(a.U), std::abs(T * a.S), 1e-300});
        CHECK(std::abs(a.F - (a.U - T * a.S)) <= 1e-12 * scale);
        CHECK(oracle::rel_diff(a.U, U) <= 1e-12);
        CHECK(std::abs(a.S - S) <= 1e-12 * std::max(1.0, std::abs(S)));
    }
}

TEST_CASE("pair energy enters U and F but not S")
{
    EnsembleDescription ens{{Microstate{1.0, {ParticleRecord{1.0, 0.0, 1, 0.5}}, 0.75}}};
    const EnsembleAggregates a = ensemble_aggregates(ens, 1.0, kNatural);
    CHECK(a.U == doctest::Approx(1.75));
    CHECK(a.S == doctest::Approx(std::log(2.0)));
    CHECK(a.F == doctest::Approx(1.75 - std::log(2.0)));
}
