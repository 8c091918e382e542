#pragma once

#include "ftqm/eigensolver.hpp"
#include "ftqm/units.hpp"

#include <vector>

namespace ftqm {

/// Relative accuracy a truncated level sum must reach before it is used
/// as sqrt(Z).
inline constexpr double kTailTolerance = 1e-8;

struct ThermalLevel {
    double E_T = 0.0;
    double p = 0.0;
    int g = 1;
};

/// Self-consistent levels at one temperature.
///
/// For T > 0: E_i(T) = E_i(0)/2 + k_B T ln(g_i)/2 - k_B T ln sqrt(Z) and
/// p_i = exp(-beta E_i(T)) / Z, with sum_i g_i p_i = 1.
///
/// T = 0 is an exact branch: E_i(T) = E_i(0), beta = +inf, the ground level
/// holds p = 1/g_0 and every other level p = 0. sqrt_z then reports the
/// ground-referenced limit sqrt(g_0) of sqrt(Z exp(beta E_0)).
struct ThermalSpectrum {
    double T = 0.0;
    double beta = 0.0;
    double sqrt_z = 1.0;
    std::vector<ThermalLevel> levels;
};

/// Estimated relative error of the truncated sum
/// sqrt(Z) = sum_i sqrt(g_i) exp(-E_i(0) / (2 k_B T)):
/// t_last / (1 - r) / sqrt(Z), with r the ratio of the last two terms.
/// Returns 0 for complete spectra and +inf when r >= 1 or fewer than two
/// levels of a truncated spectrum are available.
double truncation_tail_ratio(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units);

/// ln sqrt(Z(T)) by log-sum-exp. Throws InvalidInput for T <= 0 and
/// ConvergenceError when the tail bound is violated.
double log_sqrt_partition_closed(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units);

/// sqrt(Z(T)) = sum_i sqrt(g_i) exp(-E_i(0) / (2 k_B T)), the closed-form
/// solution of the self-consistent partition sum.
double sqrt_partition_closed(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units);

ThermalSpectrum thermal_energies(const ZeroTSpectrum& spectrum, double T, const UnitSystem& units);

struct FixedPointOptions {
    double tol = 1e-12;
    int max_iter = 500;
    double damping = 1.0;
};

struct FixedPointResult {
    double sqrt_z = 0.0;
    int iterations = 0;
};

/// Independent route to sqrt(Z): iterate Z <- sum_i g_i exp(-beta E_i(T; Z))
/// from Z_0 = sum_i g_i exp(-beta E_i(0)) until the relative change drops
/// below tol. Damping d mixes Z <- (1 - d) Z_old + d Z_new.
FixedPointResult fixed_point_partition(const ZeroTSpectrum& spectrum, double T,
                                       const UnitSystem& units,
                                       const FixedPointOptions& options = {});

/// -k_B ln(g p)
double microscopic_entropy(int g, double p, const UnitSystem& units);

/// k_B T ln(g p), the constant a level's thermal term adds to the Hamiltonian.
double temperature_term(double T, int g, double p, const UnitSystem& units);

/// kin + pot + k_B T ln(g p)
double single_particle_free_energy(double kin, double pot, int g, double p, double T,
                                   const UnitSystem& units);

struct ParticleRecord {
    double kin = 0.0;
    double pot = 0.0;
    int g = 1;
    double p = 1.0;
};

struct Microstate {
    double P = 0.0;
    std::vector<ParticleRecord> particles;
    /// Total pair interaction energy of the state.
    double pair_energy = 0.0;
};

struct EnsembleDescription {
    std::vector<Microstate> states;
};

/// Throws InvalidInput unless probabilities sum to one, every P >= 0,
/// every g >= 1 and every p lies in (0, 1].
void validate(const EnsembleDescription& ensemble);

struct EnsembleAggregates {
    double U = 0.0;
    double F = 0.0;
    double S = 0.0;
};

/// Probability-weighted internal energy, entropy and free energy. F is built
/// from the per-state free energies independently of U and S; the result
/// is checked against F = U - T S and a ConsistencyError thrown on mismatch.
EnsembleAggregates ensemble_aggregates(const EnsembleDescription& ensemble, double T,
                                       const UnitSystem& units);

} // namespace ftqm
