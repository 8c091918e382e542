#include "ftqm/cli/commands.hpp"

#include "ftqm/dynamics.hpp"
#include "ftqm/oscillator.hpp"
#include "ftqm/pipeline.hpp"
#include "ftqm/spectroscopy.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

#ifndef FTQM_VERSION
#define FTQM_VERSION "unknown"
#endif

namespace ftqm::cli {

namespace {

TridiagonalHamiltonian build_hamiltonian(const RunConfig& cfg)
{
    const std::vector<double> V = eval_potential(cfg.potential, cfg.grid);
    return discretize_hamiltonian(V, cfg.grid, cfg.mass, cfg.units);
}

std::size_t reported_levels(const RunConfig& cfg, const ZeroTSpectrum& spectrum)
{
    return std::min(cfg.levels, spectrum.size());
}

} // namespace

ResultTable run_spectrum(const RunConfig& cfg)
{
    const TridiagonalHamiltonian H = build_hamiltonian(cfg);
    const ZeroTSpectrum spectrum = assign_degeneracies(solve_spectrum(H, cfg.levels), cfg.degeneracy);
    ResultTable table({"n", "E_n(0)", "g_n"},
                      "E_n(0): lowest eigenvalues of -hbar^2/(2m) d^2/dx^2 + V, second-order finite "
                      "differences with Dirichlet walls\n"
                      "g_n: degeneracy from the configured policy");
    for (std::size_t n = 0; n < spectrum.size(); ++n) {
        table.add_row({static_cast<double>(n), spectrum[n].E0, static_cast<double>(spectrum[n].g)});
    }
    return table;
}

ResultTable run_thermal(const RunConfig& cfg)
{
    const TridiagonalHamiltonian H = build_hamiltonian(cfg);
    const ZeroTSpectrum spectrum =
        converged_spectrum(H, cfg.levels, cfg.degeneracy, cfg.temperatures, cfg.units);
    ResultTable table({"T", "n", "E_n(T)", "p_n", "sqrtZ"},
                      "sqrtZ = sum_i sqrt(g_i) exp(-E_i(0) / (2 k_B T)) over " +
                          std::to_string(spectrum.size()) +
                          " levels (tail bound 1e-8)\n"
                          "E_n(T) = E_n(0)/2 + k_B T ln(g_n)/2 - k_B T ln sqrtZ; E_n(T) = E_n(0) at "
                          "T = 0\n"
                          "p_n = exp(-E_n(T) / (k_B T)) / sqrtZ^2; at T = 0 the ground level holds "
                          "1/g_0 and sqrtZ = sqrt(g_0)");
    const std::size_t count = reported_levels(cfg, spectrum);
    for (double T : cfg.temperatures) {
        const ThermalSpectrum thermal = thermal_energies(spectrum, T, cfg.units);
        for (std::size_t n = 0; n < count; ++n) {
            table.add_row({T, static_cast<double>(n), thermal.levels[n].E_T, thermal.levels[n].p,
                           thermal.sqrt_z});
        }
    }
    return table;
}

ResultTable run_shift(const RunConfig& cfg)
{
    if (cfg.temperatures.size() < 2) {
        throw ConfigError("temperatures: shift needs at least two temperatures");
    }
    for (std::size_t k = 0; k < cfg.temperatures.size(); ++k) {
        if (!(cfg.temperatures[k] > 0.0)) {
            throw ConfigError("temperatures[" + std::to_string(k) +
                              "]: shift temperatures must be positive");
        }
    }
    if (cfg.transitions.empty()) {
        throw ConfigError("transitions: shift needs at least one [i, j] pair");
    }
    const TridiagonalHamiltonian H = build_hamiltonian(cfg);
    const ZeroTSpectrum spectrum =
        converged_spectrum(H, cfg.levels, cfg.degeneracy, cfg.temperatures, cfg.units);
    ResultTable table({"i", "j", "T1", "T2", "nu(T1)", "nu(T2)", "delta_nu", "slope",
                       "closed_form_delta"},
                      "nu(T) = (E_i(T) - E_j(T)) / h from independent thermal solves at T1 and T2\n"
                      "delta_nu = nu(T1) - nu(T2)\n"
                      "slope = k_B ln(g_i / g_j) / (2h); closed_form_delta = slope (T1 - T2)\n"
                      "delta_nu and closed_form_delta agree to 1e-10 relative or the run fails");
    for (const auto& [i, j] : cfg.transitions) {
        if (i >= spectrum.size() || j >= spectrum.size()) {
            throw ConfigError("transitions: level index beyond the " +
                              std::to_string(spectrum.size()) + " resolved levels");
        }
        for (std::size_t a = 0; a < cfg.temperatures.size(); ++a) {
            for (std::size_t b = a + 1; b < cfg.temperatures.size(); ++b) {
                const TransitionShift s = shift_between_temperatures(
                    spectrum, i, j, cfg.temperatures[b], cfg.temperatures[a], cfg.units);
                table.add_row({static_cast<double>(i), static_cast<double>(j), s.T1, s.T2, s.nu_T1,
                               s.nu_T2, s.delta_nu, s.slope, s.closed_form_delta});
            }
        }
    }
    return table;
}

EvolveResult run_evolve(const RunConfig& cfg)
{
    if (!cfg.evolution) {
        throw ConfigError("evolution: block required for the evolve command");
    }
    const EvolutionConfig& evo = *cfg.evolution;
    if (evo.times.empty()) {
        throw ConfigError("evolution.times: needs at least one time");
    }
    const double T = evo.temperature ? *evo.temperature
                                     : (cfg.temperatures.empty() ? 0.0 : cfg.temperatures.front());
    const TridiagonalHamiltonian H = build_hamiltonian(cfg);
    const std::vector<double> temps{T};
    const ZeroTSpectrum spectrum = converged_spectrum(H, cfg.levels, cfg.degeneracy, temps, cfg.units);
    const ThermalSpectrum thermal = thermal_energies(spectrum, T, cfg.units);

    std::vector<SuperpositionComponent> components;
    for (const EvolutionComponent& c : evo.components) {
        if (c.level >= spectrum.size() || !spectrum[c.level].psi) {
            throw ConfigError("evolution: level " + std::to_string(c.level) +
                              " has no single eigenfunction to evolve");
        }
        components.push_back({c.coeff, WaveField::from_real(*spectrum[c.level].psi, cfg.grid, T, c.level),
                              thermal.levels[c.level].E_T});
    }

    EvolveResult out{
        ResultTable({"t", "x", "Re_psi", "Im_psi", "density"},
                    "psi(x, t) = sum_i c_i psi_i(x) exp(-i E_i(T) t / hbar) with E_i(T) from the "
                    "self-consistent thermal levels at T = " +
                        format_number(T)),
        ResultTable({"t", "norm"}, "norm = sum_k |psi(x_k, t)|^2 h")};
    for (double t : evo.times) {
        const WaveField field = evolve_superposition(components, t, cfg.units);
        for (std::size_t k = 0; k < field.values.size(); k += evo.x_stride) {
            const Complex v = field.values[k];
            out.field.add_row({t, cfg.grid.x(k), v.real(), v.imag(), std::norm(v)});
        }
        out.norms.add_row({t, field.norm_squared()});
    }
    return out;
}

ResultTable run_oscillator(const RunConfig& cfg)
{
    const auto* ho = std::get_if<HarmonicPotential>(&cfg.potential.shape);
    if (ho == nullptr) {
        throw ConfigError("potential.type: the oscillator command needs a harmonic potential");
    }
    const OscillatorParams params{ho->omega_osc, ho->mass};
    ResultTable table({"T", "n", "E_n(0)", "E_n(T)", "E_n(0+)", "sqrtZ"},
                      "E_n(0) = (n + 1/2) hbar omega\n"
                      "E_n(T) = (n + 1)/2 hbar omega + k_B T ln(1 - exp(-hbar omega / (2 k_B T))); "
                      "E_n(T) = E_n(0) at T = 0\n"
                      "E_n(0+) = (n + 1)/2 hbar omega, the T -> 0+ limit of E_n(T); it differs "
                      "from E_n(0) for n >= 1\n"
                      "sqrtZ = exp(-hbar omega / (4 k_B T)) / (1 - exp(-hbar omega / (2 k_B T))); "
                      "1 at T = 0 (ground-referenced)");
    for (double T : cfg.temperatures) {
        const double sqrt_z = T > 0.0 ? ho_sqrt_partition(params, T, cfg.units) : 1.0;
        for (std::size_t n = 0; n < cfg.levels; ++n) {
            const int level = static_cast<int>(n);
            table.add_row({T, static_cast<double>(n), ho_energy_zero_T(level, params, cfg.units),
                           ho_energy_thermal(level, params, T, cfg.units),
                           0.5 * (level + 1) * cfg.units.hbar() * params.omega_osc, sqrt_z});
        }
    }
    return table;
}

ResultTable run_ensemble(const RunConfig& cfg)
{
    if (!cfg.ensemble) {
        throw ConfigError("ensemble: block required for the ensemble command");
    }
    const double T = cfg.ensemble->temperature;
    const EnsembleAggregates agg = ensemble_aggregates(cfg.ensemble->ensemble, T, cfg.units);
    ResultTable table({"T", "U", "F", "S", "closure_residual"},
                      "U = sum_i P_i (sum_j (kin + pot) + pair_energy)\n"
                      "S = -k_B sum_i P_i sum_j ln(g p)\n"
                      "F = sum_i P_i F_i, F_i = sum_j (kin + pot) + pair_energy + k_B T sum_j ln(g p)\n"
                      "closure_residual = F - (U - T S)");
    table.add_row({T, agg.U, agg.F, agg.S, agg.F - (agg.U - T * agg.S)});
    return table;
}

NamedTables run_command(std::string_view command, const RunConfig& cfg)
{
    NamedTables out;
    if (command == "spectrum") {
        out.emplace_back("spectrum", run_spectrum(cfg));
    } else if (command == "thermal") {
        out.emplace_back("thermal", run_thermal(cfg));
    } else if (command == "shift") {
        out.emplace_back("shift", run_shift(cfg));
    } else if (command == "evolve") {
        EvolveResult r = run_evolve(cfg);
        out.emplace_back("evolve", std::move(r.field));
        out.emplace_back("evolve_norm", std::move(r.norms));
    } else if (command == "oscillator") {
        out.emplace_back("oscillator", run_oscillator(cfg));
    } else if (command == "ensemble") {
        out.emplace_back("ensemble", run_ensemble(cfg));
    } else {
        throw ConfigError("unknown command \"" + std::string(command) + "\"");
    }
    return out;
}

std::string config_hash(std::string_view config_text)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(config_text.data(), config_text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        char buf[3];
        std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string run_meta(std::string_view command, std::string_view config_text)
{
    const EigenOptions eigen;
    const FixedPointOptions fixed_point;
    std::ostringstream out;
    out << "tool: ftqm " << FTQM_VERSION << "\n"
        << "command: " << command << "\n"
        << "config_sha256: " << config_hash(config_text) << "\n"
        << "partition_tail_tolerance: " << format_number(kTailTolerance) << "\n"
        << "shift_cross_check_tolerance: " << format_number(kShiftCrossCheckTolerance) << "\n"
        << "eigen_residual_tolerance: " << format_number(eigen.residual_tol) << "\n"
        << "fixed_point_tolerance: " << format_number(fixed_point.tol) << "\n"
        << "ensemble_closure_tolerance: 1e-12\n";
    return out.str();
}

} // namespace ftqm::cli
