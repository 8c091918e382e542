#pragma once

#include "ftqm/dynamics.hpp"
#include "ftqm/eigensolver.hpp"
#include "ftqm/units.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ftqm {

/// Non-interacting particles occupying levels of one shared spectrum.
struct MultiParticleConfig {
    std::vector<std::size_t> occupations;
    /// Common probability for every particle. When empty each particle uses
    /// the thermal probability of the level it occupies.
    std::optional<double> shared_p;
    /// Per-particle degeneracies; defaults to the occupied level's g.
    std::optional<std::vector<int>> g_per_particle;
    /// Total pair interaction. Only zero is solvable.
    double pair_energy = 0.0;
};

void validate(const MultiParticleConfig& config, const ZeroTSpectrum& spectrum);

/// sum_j E_{i_j}(0) + k_B T sum_j ln(g_j p_j). Throws InvalidInput for a
/// nonzero pair_energy.
double multiparticle_thermal_energy(const MultiParticleConfig& config,
                                    const ZeroTSpectrum& spectrum, double T,
                                    const UnitSystem& units);

/// Psi(x_1, ..., x_N) = prod_j psi_j(x_j) over one shared grid.
class ProductState {
public:
    explicit ProductState(std::vector<WaveField> factors);

    std::size_t particle_count() const { return factors_.size(); }

    /// Amplitude at the grid-node tuple (one index per particle).
    Complex operator()(std::span<const std::size_t> nodes) const;

    /// Norm under the product measure, from the factor norms.
    double norm_squared() const;

    const std::vector<WaveField>& factors() const { return factors_; }

private:
    std::vector<WaveField> factors_;
};

} // namespace ftqm
