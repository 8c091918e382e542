#pragma once

#include "ftqm/cli/config.hpp"
#include "ftqm/cli/table.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftqm::cli {

/// Columns: n, E_n(0), g_n
ResultTable run_spectrum(const RunConfig& cfg);

/// Columns: T, n, E_n(T), p_n, sqrtZ; rows in config temperature order.
ResultTable run_thermal(const RunConfig& cfg);

/// Columns: i, j, T1, T2, nu(T1), nu(T2), delta_nu, slope, closed_form_delta.
/// One row per transition and temperature pair (T1 later in the list).
ResultTable run_shift(const RunConfig& cfg);

struct EvolveResult {
    /// Columns: t, x, Re_psi, Im_psi, density
    ResultTable field;
    /// Columns: t, norm
    ResultTable norms;
};

EvolveResult run_evolve(const RunConfig& cfg);

/// Columns: T, n, E_n(0), E_n(T), E_n(0+), sqrtZ from the analytic oscillator.
ResultTable run_oscillator(const RunConfig& cfg);

/// Columns: T, U, F, S, closure_residual
ResultTable run_ensemble(const RunConfig& cfg);

/// Named output tables of one subcommand; the names become file stems.
using NamedTables = std::vector<std::pair<std::string, ResultTable>>;

/// Dispatches by subcommand name. Throws ConfigError for unknown names.
NamedTables run_command(std::string_view command, const RunConfig& cfg);

/// Key/value report with tool version, config hash and tolerances.
std::string run_meta(std::string_view command, std::string_view config_text);

/// Hex SHA-256 of the configuration text.
std::string config_hash(std::string_view config_text);

} // namespace ftqm::cli
