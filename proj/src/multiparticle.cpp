#include "ftqm/multiparticle.hpp"

#include "ftqm/error.hpp"
#include "ftqm/thermal.hpp"

#include <cmath>
#include <string>

namespace ftqm {

void validate(const MultiParticleConfig& config, const ZeroTSpectrum& spectrum)
{
    const std::size_t n = config.occupations.size();
    if (n < 1) {
        throw InvalidInput("need at least one particle");
    }
    for (std::size_t index : config.occupations) {
        if (index >= spectrum.size()) {
            throw InvalidInput("occupation index " + std::to_string(index) + " is outside the " +
                               std::to_string(spectrum.size()) + " available levels");
        }
    }
    if (config.shared_p && (!(*config.shared_p > 0.0) || *config.shared_p > 1.0)) {
        throw InvalidInput("shared probability must lie in (0, 1]");
    }
    if (config.g_per_particle) {
        if (config.g_per_particle->size() != n) {
            throw InvalidInput("one degeneracy per particle is required");
        }
        for (int g : *config.g_per_particle) {
            if (g < 1) {
                throw InvalidInput("degeneracies must be >= 1");
            }
        }
    }
    if (!std::isfinite(config.pair_energy)) {
        throw InvalidInput("pair energy must be finite");
    }
}

double multiparticle_thermal_energy(const MultiParticleConfig& config,
                                    const ZeroTSpectrum& spectrum, double T,
                                    const UnitSystem& units)
{
    validate(config, spectrum);
    if (config.pair_energy != 0.0) {
        throw InvalidInput("interacting particles (nonzero pair energy) are not supported");
    }
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw InvalidInput("temperature must be finite and >= 0");
    }
    if (T == 0.0) {
        double energy = 0.0;
        for (std::size_t index : config.occupations) {
            energy += spectrum[index].E0;
        }
        return energy;
    }
    // Summed per particle so that repeated occupations add exactly.
    const ThermalSpectrum thermal = thermal_energies(spectrum, T, units);
    double energy = 0.0;
    for (std::size_t j = 0; j < config.occupations.size(); ++j) {
        const std::size_t index = config.occupations[j];
        const int g = config.g_per_particle ? (*config.g_per_particle)[j] : spectrum[index].g;
        const double p = config.shared_p ? *config.shared_p : thermal.levels[index].p;
        energy += spectrum[index].E0 + temperature_term(T, g, p, units);
    }
    return energy;
}

ProductState::ProductState(std::vector<WaveField> factors) : factors_(std::move(factors))
{
    if (factors_.empty()) {
        throw InvalidInput("product state needs at least one factor");
    }
    for (const WaveField& f : factors_) {
        if (!(f.grid == factors_.front().grid) || f.values.size() != f.grid.size()) {
            throw InvalidInput("product-state factors must share one grid");
        }
    }
}

Complex ProductState::operator()(std::span<const std::size_t> nodes) const
{
    if (nodes.size() != factors_.size()) {
        throw InvalidInput("one grid node per particle is required");
    }
    Complex amp{1.0, 0.0};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        amp *= factors_[j].values.at(nodes[j]);
    }
    return amp;
}

double ProductState::norm_squared() const
{
    double n = 1.0;
    for (const WaveField& f : factors_) {
        n *= f.norm_squared();
    }
    return n;
}

} // namespace ftqm
