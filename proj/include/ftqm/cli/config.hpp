#pragma once

#include "ftqm/eigensolver.hpp"
#include "ftqm/error.hpp"
#include "ftqm/grid.hpp"
#include "ftqm/potential.hpp"
#include "ftqm/thermal.hpp"
#include "ftqm/units.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftqm::cli {

/// Malformed or schema-violating run configuration. The message names the
/// offending field path (e.g. "temperatures[2]") or parse position.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class OutputFormat { csv, report };

struct EvolutionComponent {
    std::size_t level = 0;
    std::complex<double> coeff{1.0, 0.0};
};

struct EvolutionConfig {
    std::vector<EvolutionComponent> components;
    std::vector<double> times;
    /// Defaults to the first entry of RunConfig::temperatures.
    std::optional<double> temperature;
    std::size_t x_stride = 1;
};

struct EnsembleConfig {
    double temperature = 1.0;
    EnsembleDescription ensemble;
};

struct RunConfig {
    UnitSystem units = UnitSystem::natural();
    double mass = 1.0;
    PotentialSpec potential{HarmonicPotential{}, 0.0};
    Grid1D grid{-10.0, 10.0, 2001};
    std::size_t levels = 10;
    DegeneracyPolicy degeneracy = AllOnes{};
    std::vector<double> temperatures{1.0};
    std::vector<std::pair<std::size_t, std::size_t>> transitions;
    std::optional<EvolutionConfig> evolution;
    std::optional<EnsembleConfig> ensemble;
    std::string output_directory = ".";
    OutputFormat format = OutputFormat::csv;
};

/// Parses and validates a JSON run configuration. Unknown keys are rejected.
RunConfig parse_config(std::string_view text);

OutputFormat parse_format(std::string_view name);

} // namespace ftqm::cli
