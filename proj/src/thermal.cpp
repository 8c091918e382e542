#include "ftqm/thermal.hpp"

#include "ftqm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ftqm {

namespace {

/// ln of the i-th term of the sqrt(Z) sum: ln(g)/2 - E0 / (2 k_B T).
std::vector<double> log_terms(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units)
{
    const double half_beta = 0.5 * beta_of(T, units);
    std::vector<double> out(spectrum.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const ZeroTLevel& level = spectrum[i];
        out[i] = 0.5 * std::log(static_cast<double>(level.g)) - half_beta * level.E0;
    }
    return out;
}

double log_sum_exp(const std::vector<double>& a)
{
    const double m = *std::max_element(a.begin(), a.end());
    double s = 0.0;
    for (double v : a) {
        s += std::exp(v - m);
    }
    return m + std::log(s);
}

double tail_ratio(const std::vector<double>& terms, double log_total, SpectrumExtent extent)
{
    if (extent == SpectrumExtent::complete) {
        return 0.0;
    }
    const std::size_t k = terms.size();
    if (k < 2) {
        return std::numeric_limits<double>::infinity();
    }
    const double log_r = terms[k - 1] - terms[k - 2];
    if (!(log_r < 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(terms[k - 1] - log_total) / -std::expm1(log_r);
}

void check_probability(int g, double p)
{
    if (g < 1) {
        throw InvalidInput("degeneracy must be >= 1");
    }
    if (!(p > 0.0) || p > 1.0) {
        throw InvalidInput("probability must lie in (0, 1]");
    }
}

} // namespace

double truncation_tail_ratio(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units)
{
    const std::vector<double> terms = log_terms(spectrum, T, units);
    return tail_ratio(terms, log_sum_exp(terms), spectrum.extent());
}

double log_sqrt_partition_closed(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units)
{
    const std::vector<double> terms = log_terms(spectrum, T, units);
    const double log_total = log_sum_exp(terms);
    const double tail = tail_ratio(terms, log_total, spectrum.extent());
    if (!(tail < kTailTolerance)) {
        std::ostringstream msg;
        msg << "truncated spectrum of " << spectrum.size() << " levels is too short at T = " << T
            << ": tail estimate " << tail << " of sqrt(Z) exceeds " << kTailTolerance;
        throw ConvergenceError(msg.str());
    }
    return log_total;
}

double sqrt_partition_closed(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units)
{
    return std::exp(log_sqrt_partition_closed(spectrum, T, units));
}

ThermalSpectrum thermal_energies(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units)
{
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw InvalidInput("temperature must be finite and >= 0");
    }
    ThermalSpectrum out;
    out.T = T;
    out.levels.resize(spectrum.size());

    if (T == 0.0) {
        out.beta = std::numeric_limits<double>::infinity();
        out.sqrt_z = std::sqrt(static_cast<double>(spectrum[0].g));
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            const ZeroTLevel& level = spectrum[i];
            out.levels[i] = ThermalLevel{level.E0, i == 0 ? 1.0 / level.g : 0.0, level.g};
        }
        return out;
    }

    const double kT = units.k_B() * T;
    const double log_sqrt_z = log_sqrt_partition_closed(spectrum, T, units);
    out.beta = beta_of(T, units);
    out.sqrt_z = std::exp(log_sqrt_z);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const ZeroTLevel& level = spectrum[i];
        const double E_T =
            0.5 * level.E0 + 0.5 * kT * std::log(static_cast<double>(level.g)) - kT * log_sqrt_z;
        const double p = std::exp(-out.beta * E_T - 2.0 * log_sqrt_z);
        out.levels[i] = ThermalLevel{E_T, p, level.g};
    }
    return out;
}

FixedPointResult fixed_point_partition(const ZeroTSpectrum& spectrum, double T,
                                       const UnitSystem& units, const FixedPointOptions& options)
{
    if (!(options.tol > 0.0)) {
        throw InvalidInput("fixed-point tolerance must be positive");
    }
    if (!(options.damping > 0.0) || options.damping > 1.0) {
        throw InvalidInput("damping must lie in (0, 1]");
    }
    if (options.max_iter < 1) {
        throw InvalidInput("max_iter must be >= 1");
    }
    const double beta = beta_of(T, units);
    const double kT = units.k_B() * T;

    double Z = 0.0;
    for (const ZeroTLevel& level : spectrum.levels()) {
        Z += level.g * std::exp(-beta * level.E0);
    }
    if (!(Z > 0.0) || !std::isfinite(Z)) {
        throw ConvergenceError("initial partition sum is not a positive finite number");
    }

    double previous = Z;
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        const double ln_sqrt_z = 0.5 * std::log(Z);
        double Z_new = 0.0;
        for (const ZeroTLevel& level : spectrum.levels()) {
            const double E_T = 0.5 * level.E0 + 0.5 * kT * std::log(static_cast<double>(level.g)) -
                               kT * ln_sqrt_z;
            Z_new += level.g * std::exp(-beta * E_T);
        }
        const double next = (1.0 - options.damping) * Z + options.damping * Z_new;
        const double change = std::abs(next - Z) / Z;
        previous = Z;
        Z = next;
        if (change < options.tol) {
            return FixedPointResult{std::sqrt(Z), iter};
        }
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "partition-function iteration did not converge in " << options.max_iter
        << " iterations; last iterates Z = " << previous << ", " << Z;
    throw ConvergenceError(msg.str());
}

double microscopic_entropy(int g, double p, const UnitSystem& units)
{
    check_probability(g, p);
    return -units.k_B() * std::log(g * p);
}

double temperature_term(double T, int g, double p, const UnitSystem& units)
{
    check_probability(g, p);
    if (!(T >= 0.0)) {
        throw InvalidInput("temperature must be >= 0");
    }
    if (T == 0.0) {
        return 0.0;
    }
    return units.k_B() * T * std::log(g * p);
}

double single_particle_free_energy(double kin, double pot, int g, double p, double T,
                                   const UnitSystem& units)
{
    return kin + pot + temperature_term(T, g, p, units);
}

void validate(const EnsembleDescription& ensemble)
{
    if (ensemble.states.empty()) {
        throw InvalidInput("ensemble has no microstates");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
        const Microstate& state = ensemble.states[i];
        if (!(state.P >= 0.0) || !std::isfinite(state.P)) {
            throw InvalidInput("microstate " + std::to_string(i) + " has an invalid probability");
        }
        if (!std::isfinite(state.pair_energy)) {
            throw InvalidInput("microstate " + std::to_string(i) + " has a non-finite pair energy");
        }
        for (const ParticleRecord& particle : state.particles) {
            check_probability(particle.g, particle.p);
            if (!std::isfinite(particle.kin) || !std::isfinite(particle.pot)) {
                throw InvalidInput("microstate " + std::to_string(i) + " has non-finite energies");
            }
        }
        total += state.P;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidInput("microstate probabilities must sum to 1");
    }
}

EnsembleAggregates ensemble_aggregates(const EnsembleDescription& ensemble, double T,
                                       const UnitSystem& units)
{
    validate(ensemble);
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw InvalidInput("temperature must be finite and >= 0");
    }
    const double kT = units.k_B() * T;
    EnsembleAggregates out;
    for (const Microstate& state : ensemble.states) {
        double internal = state.pair_energy;
        double log_weight = 0.0;
        double free = state.pair_energy;
        for (const ParticleRecord& particle : state.particles) {
            const double ln_gp = std::log(particle.g * particle.p);
            internal += particle.kin + particle.pot;
            log_weight += ln_gp;
            free += particle.kin + particle.pot + kT * ln_gp;
        }
        out.U += state.P * internal;
        out.S += -units.k_B() * state.P * log_weight;
        out.F += state.P * free;
    }
    const double TS = T * out.S;
    const double scale = std::max({std::abs(out.F), std::abs(out.U), std::abs(TS)});
    if (std::abs(out.F - (out.U - TS)) > 1e-12 * scale) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "free-energy closure failed: F = " << out.F << ", U - TS = " << out.U - TS;
        throw ConsistencyError(msg.str());
    }
    return out;
}

} // namespace ftqm
