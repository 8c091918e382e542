#include "ftqm/cli/commands.hpp"
#include "ftqm/cli/config.hpp"
#include "ftqm/dynamics.hpp"
#include "ftqm/eigensolver.hpp"
#include "ftqm/error.hpp"
#include "ftqm/multiparticle.hpp"
#include "ftqm/oscillator.hpp"
#include "ftqm/pipeline.hpp"
#include "ftqm/potential.hpp"
#include "ftqm/spectroscopy.hpp"
#include "ftqm/thermal.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace py::literals;
using namespace ftqm;

namespace {

/// Later registrations are tried first, so subclasses follow their base.
void bind_errors(py::module_& m)
{
    const py::object base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", base);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", base);
    py::register_exception<IoError>(m, "IoError", base);
    py::register_exception<cli::ConfigError>(m, "ConfigError", m.attr("InvalidInput"));
}

void bind_model(py::module_& m)
{
    py::class_<UnitSystem>(m, "UnitSystem")
        .def_static("natural", &UnitSystem::natural)
        .def_static("make", &UnitSystem::make, "hbar"_a, "k_B"_a, "mass"_a)
        .def_property_readonly("hbar", &UnitSystem::hbar)
        .def_property_readonly("k_B", &UnitSystem::k_B)
        .def_property_readonly("h_planck", &UnitSystem::h_planck)
        .def_property_readonly("mass_default", &UnitSystem::mass_default);

    m.def("beta_of", &beta_of, "T"_a, "units"_a);

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, double, std::size_t>(), "x_min"_a, "x_max"_a, "n_points"_a)
        .def_property_readonly("x_min", &Grid1D::x_min)
        .def_property_readonly("x_max", &Grid1D::x_max)
        .def_property_readonly("spacing", &Grid1D::spacing)
        .def("__len__", &Grid1D::size)
        .def("x", &Grid1D::x, "k"_a)
        .def("points", &Grid1D::points);

    py::class_<HarmonicPotential>(m, "HarmonicPotential")
        .def(py::init<double, double>(), "mass"_a = 1.0, "omega_osc"_a = 1.0)
        .def_readwrite("mass", &HarmonicPotential::mass)
        .def_readwrite("omega_osc", &HarmonicPotential::omega_osc);
    py::class_<InfiniteWell>(m, "InfiniteWell")
        .def(py::init<double>(), "width"_a)
        .def_readwrite("width", &InfiniteWell::width);
    py::class_<TabulatedPotential>(m, "TabulatedPotential")
        .def(py::init<std::vector<double>>(), "values"_a)
        .def_readwrite("values", &TabulatedPotential::values);
    py::class_<PotentialSpec>(m, "PotentialSpec")
        .def(py::init<PotentialShape, double>(), "shape"_a, "offset"_a = 0.0)
        .def_readwrite("shape", &PotentialSpec::shape)
        .def_readwrite("offset", &PotentialSpec::offset);
    m.def("eval_potential", &eval_potential, "spec"_a, "grid"_a);
}

void bind_spectrum(py::module_& m)
{
    py::class_<TridiagonalHamiltonian>(m, "TridiagonalHamiltonian")
        .def_property_readonly("diagonal", [](const TridiagonalHamiltonian& H) {
            return std::vector<double>(H.diagonal().begin(), H.diagonal().end());
        })
        .def_property_readonly("off_diagonal", &TridiagonalHamiltonian::off_diagonal)
        .def_property_readonly("dimension", &TridiagonalHamiltonian::dimension)
        .def_property_readonly("grid", &TridiagonalHamiltonian::grid)
        .def_property_readonly("mass", &TridiagonalHamiltonian::mass)
        .def("apply", [](const TridiagonalHamiltonian& H, const std::vector<double>& x) {
            return H.apply(std::span<const double>(x));
        })
        .def("count_below", &TridiagonalHamiltonian::count_below, "lambda_"_a);
    m.def("discretize_hamiltonian",
          [](const std::vector<double>& V, const Grid1D& grid, double mass, const UnitSystem& units) {
              return discretize_hamiltonian(V, grid, mass, units);
          },
          "potential"_a, "grid"_a, "mass"_a, "units"_a);

    py::enum_<SpectrumExtent>(m, "SpectrumExtent")
        .value("complete", SpectrumExtent::complete)
        .value("truncated", SpectrumExtent::truncated);

    py::class_<ZeroTLevel>(m, "ZeroTLevel")
        .def(py::init<double, int, std::optional<std::vector<double>>>(), "E0"_a, "g"_a = 1,
             "psi"_a = std::nullopt)
        .def_readwrite("E0", &ZeroTLevel::E0)
        .def_readwrite("g", &ZeroTLevel::g)
        .def_readwrite("psi", &ZeroTLevel::psi);

    py::class_<ZeroTSpectrum>(m, "ZeroTSpectrum")
        .def(py::init<std::vector<ZeroTLevel>, SpectrumExtent, std::optional<Grid1D>>(), "levels"_a,
             "extent"_a, "grid"_a = std::nullopt)
        .def_static("from_energies",
                    [](const std::vector<double>& E, const std::vector<int>& g, SpectrumExtent extent) {
                        return ZeroTSpectrum::from_energies(E, g, extent);
                    },
                    "energies"_a, "degeneracies"_a, "extent"_a)
        .def_property_readonly("levels", &ZeroTSpectrum::levels)
        .def_property_readonly("extent", &ZeroTSpectrum::extent)
        .def_property_readonly("grid", &ZeroTSpectrum::grid)
        .def("energies", &ZeroTSpectrum::energies)
        .def("degeneracies", &ZeroTSpectrum::degeneracies)
        .def("__len__", &ZeroTSpectrum::size)
        .def("__getitem__", &ZeroTSpectrum::operator[]);

    py::class_<EigenOptions>(m, "EigenOptions")
        .def(py::init<>())
        .def_readwrite("max_inverse_iterations", &EigenOptions::max_inverse_iterations)
        .def_readwrite("residual_tol", &EigenOptions::residual_tol);
    m.def("lowest_eigenvalues", &lowest_eigenvalues, "H"_a, "count"_a);
    m.def("solve_spectrum", &solve_spectrum, "H"_a, "count"_a, "options"_a = EigenOptions{});

    py::class_<ExplicitDegeneracies>(m, "ExplicitDegeneracies")
        .def(py::init<std::vector<int>>(), "g"_a)
        .def_readwrite("g", &ExplicitDegeneracies::g);
    py::class_<ClusterDegeneracies>(m, "ClusterDegeneracies")
        .def(py::init<double>(), "tolerance"_a)
        .def_readwrite("tolerance", &ClusterDegeneracies::tolerance);
    py::class_<AllOnes>(m, "AllOnes").def(py::init<>());
    m.def("assign_degeneracies", &assign_degeneracies, "spectrum"_a, "policy"_a);
    m.def("converged_spectrum",
          [](const TridiagonalHamiltonian& H, std::size_t min_levels, const DegeneracyPolicy& policy,
             const std::vector<double>& temperatures, const UnitSystem& units) {
              return converged_spectrum(H, min_levels, policy, temperatures, units);
          },
          "H"_a, "min_levels"_a, "policy"_a, "temperatures"_a, "units"_a);
}

void bind_thermal(py::module_& m)
{
    m.attr("TAIL_TOLERANCE") = kTailTolerance;

    py::class_<ThermalLevel>(m, "ThermalLevel")
        .def_readonly("E_T", &ThermalLevel::E_T)
        .def_readonly("p", &ThermalLevel::p)
        .def_readonly("g", &ThermalLevel::g);
    py::class_<ThermalSpectrum>(m, "ThermalSpectrum")
        .def_readonly("T", &ThermalSpectrum::T)
        .def_readonly("beta", &ThermalSpectrum::beta)
        .def_readonly("sqrt_z", &ThermalSpectrum::sqrt_z)
        .def_readonly("levels", &ThermalSpectrum::levels);

    m.def("truncation_tail_ratio", &truncation_tail_ratio, "spectrum"_a, "T"_a, "units"_a);
    m.def("sqrt_partition_closed", &sqrt_partition_closed, "spectrum"_a, "T"_a, "units"_a);
    m.def("thermal_energies", &thermal_energies, "spectrum"_a, "T"_a, "units"_a);

    py::class_<FixedPointResult>(m, "FixedPointResult")
        .def_readonly("sqrt_z", &FixedPointResult::sqrt_z)
        .def_readonly("iterations", &FixedPointResult::iterations);
    m.def("fixed_point_partition",
          [](const ZeroTSpectrum& s, double T, const UnitSystem& units, double tol, int max_iter,
             double damping) {
              return fixed_point_partition(s, T, units, FixedPointOptions{tol, max_iter, damping});
          },
          "spectrum"_a, "T"_a, "units"_a, "tol"_a = 1e-12, "max_iter"_a = 500, "damping"_a = 1.0);

    m.def("microscopic_entropy", &microscopic_entropy, "g"_a, "p"_a, "units"_a);
    m.def("temperature_term", &temperature_term, "T"_a, "g"_a, "p"_a, "units"_a);
    m.def("single_particle_free_energy", &single_particle_free_energy, "kin"_a, "pot"_a, "g"_a,
          "p"_a, "T"_a, "units"_a);

    py::class_<ParticleRecord>(m, "ParticleRecord")
        .def(py::init<double, double, int, double>(), "kin"_a, "pot"_a, "g"_a = 1, "p"_a = 1.0)
        .def_readwrite("kin", &ParticleRecord::kin)
        .def_readwrite("pot", &ParticleRecord::pot)
        .def_readwrite("g", &ParticleRecord::g)
        .def_readwrite("p", &ParticleRecord::p);
    py::class_<Microstate>(m, "Microstate")
        .def(py::init<double, std::vector<ParticleRecord>, double>(), "P"_a, "particles"_a,
             "pair_energy"_a = 0.0)
        .def_readwrite("P", &Microstate::P)
        .def_readwrite("particles", &Microstate::particles)
        .def_readwrite("pair_energy", &Microstate::pair_energy);
    py::class_<EnsembleDescription>(m, "EnsembleDescription")
        .def(py::init<std::vector<Microstate>>(), "states"_a)
        .def_readwrite("states", &EnsembleDescription::states);
    py::class_<EnsembleAggregates>(m, "EnsembleAggregates")
        .def_readonly("U", &EnsembleAggregates::U)
        .def_readonly("F", &EnsembleAggregates::F)
        .def_readonly("S", &EnsembleAggregates::S);
    m.def("ensemble_aggregates", &ensemble_aggregates, "ensemble"_a, "T"_a, "units"_a);
}

void bind_oscillator(py::module_& m)
{
    py::class_<OscillatorParams>(m, "OscillatorParams")
        .def(py::init<double, double>(), "omega_osc"_a = 1.0, "mass"_a = 1.0)
        .def_readwrite("omega_osc", &OscillatorParams::omega_osc)
        .def_readwrite("mass", &OscillatorParams::mass);
    m.def("ho_energy_zero_T", &ho_energy_zero_T, "n"_a, "params"_a, "units"_a);
    m.def("ho_sqrt_partition", &ho_sqrt_partition, "params"_a, "T"_a, "units"_a);
    m.def("ho_energy_thermal", &ho_energy_thermal, "n"_a, "params"_a, "T"_a, "units"_a);
    m.def("ho_spectrum", &ho_spectrum, "params"_a, "count"_a, "units"_a);
    m.def("ho_ground_state", &ho_ground_state, "params"_a, "grid"_a, "units"_a);
}

void bind_spectroscopy(py::module_& m)
{
    py::class_<TransitionShift>(m, "TransitionShift")
        .def_readonly("i", &TransitionShift::i)
        .def_readonly("j", &TransitionShift::j)
        .def_readonly("T1", &TransitionShift::T1)
        .def_readonly("T2", &TransitionShift::T2)
        .def_readonly("nu_T1", &TransitionShift::nu_T1)
        .def_readonly("nu_T2", &TransitionShift::nu_T2)
        .def_readonly("delta_nu", &TransitionShift::delta_nu)
        .def_readonly("closed_form_delta", &TransitionShift::closed_form_delta)
        .def_readonly("slope", &TransitionShift::slope);
    m.def("transition_frequency", &transition_frequency, "thermal"_a, "i"_a, "j"_a, "units"_a);
    m.def("shift_slope", &shift_slope, "g_i"_a, "g_j"_a, "units"_a);
    m.def("shift_between_temperatures", &shift_between_temperatures, "spectrum"_a, "i"_a, "j"_a,
          "T1"_a, "T2"_a, "units"_a);
}

void bind_dynamics(py::module_& m)
{
    py::class_<WaveField>(m, "WaveField")
        .def(py::init([](std::vector<Complex> values, const Grid1D& grid, double t, double T,
                         std::optional<std::size_t> level) {
                 return WaveField{std::move(values), grid, t, T, level};
             }),
             "values"_a, "grid"_a, "t"_a = 0.0, "T"_a = 0.0, "level"_a = std::nullopt)
        .def_static("from_real",
                    [](const std::vector<double>& psi, const Grid1D& grid, double T,
                       std::optional<std::size_t> level) {
                        return WaveField::from_real(psi, grid, T, level);
                    },
                    "psi"_a, "grid"_a, "T"_a, "level"_a = std::nullopt)
        .def_readwrite("values", &WaveField::values)
        .def_readonly("grid", &WaveField::grid)
        .def_readwrite("t", &WaveField::t)
        .def_readwrite("T", &WaveField::T)
        .def_readwrite("level", &WaveField::level)
        .def("norm_squared", &WaveField::norm_squared);

    py::class_<SuperpositionComponent>(m, "SuperpositionComponent")
        .def(py::init<Complex, WaveField, double>(), "coeff"_a, "psi"_a, "E_T"_a)
        .def_readwrite("coeff", &SuperpositionComponent::coeff)
        .def_readwrite("psi", &SuperpositionComponent::psi)
        .def_readwrite("E_T", &SuperpositionComponent::E_T);

    m.def("phase_factor", &phase_factor, "E"_a, "t"_a, "units"_a);
    m.def("evolve_stationary", &evolve_stationary, "psi0"_a, "E_T"_a, "t"_a, "units"_a);
    m.def("evolve_superposition",
          [](const std::vector<SuperpositionComponent>& c, double t, const UnitSystem& units) {
              return evolve_superposition(c, t, units);
          },
          "components"_a, "t"_a, "units"_a);
    m.def("density_beat_frequency",
          [](const std::vector<SuperpositionComponent>& c, std::size_t node, double t_end,
             std::size_t samples, const UnitSystem& units) {
              return density_beat_frequency(c, node, t_end, samples, units);
          },
          "components"_a, "node"_a, "t_end"_a, "samples"_a, "units"_a);

    py::class_<LagrangianSample>(m, "LagrangianSample")
        .def_readonly("density", &LagrangianSample::density)
        .def_readonly("total", &LagrangianSample::total);
    m.def("lagrangian_density",
          [](const WaveField& psi, const std::vector<Complex>& dpsi_dt, double T, int g, double p,
             const std::vector<double>& V, double mass, const UnitSystem& units) {
              return lagrangian_density(psi, dpsi_dt, T, g, p, V, mass, units);
          },
          "psi"_a, "dpsi_dt"_a, "T"_a, "g"_a, "p"_a, "potential"_a, "mass"_a, "units"_a);
    m.def("euler_lagrange_residual", &euler_lagrange_residual, "psi"_a, "E_T"_a, "tau"_a, "H"_a);
}

void bind_multiparticle(py::module_& m)
{
    py::class_<MultiParticleConfig>(m, "MultiParticleConfig")
        .def(py::init<std::vector<std::size_t>, std::optional<double>, std::optional<std::vector<int>>,
                      double>(),
             "occupations"_a, "shared_p"_a = std::nullopt, "g_per_particle"_a = std::nullopt,
             "pair_energy"_a = 0.0)
        .def_readwrite("occupations", &MultiParticleConfig::occupations)
        .def_readwrite("shared_p", &MultiParticleConfig::shared_p)
        .def_readwrite("g_per_particle", &MultiParticleConfig::g_per_particle)
        .def_readwrite("pair_energy", &MultiParticleConfig::pair_energy);
    m.def("multiparticle_thermal_energy", &multiparticle_thermal_energy, "config"_a, "spectrum"_a,
          "T"_a, "units"_a);

    py::class_<ProductState>(m, "ProductState")
        .def(py::init<std::vector<WaveField>>(), "factors"_a)
        .def_property_readonly("particle_count", &ProductState::particle_count)
        .def("__call__",
             [](const ProductState& s, const std::vector<std::size_t>& nodes) { return s(nodes); })
        .def("norm_squared", &ProductState::norm_squared);
}

void bind_cli(py::module_& m)
{
    m.def(
        "run",
        [](const std::string& command, const std::string& config_text) {
            const cli::RunConfig cfg = cli::parse_config(config_text);
            py::dict out;
            for (const auto& [name, table] : cli::run_command(command, cfg)) {
                out[py::str(name)] = py::dict("columns"_a = table.columns(), "rows"_a = table.rows(),
                                              "csv"_a = cli::to_csv(table));
            }
            return out;
        },
        "command"_a, "config_text"_a,
        "Runs a CLI subcommand on a JSON config and returns its tables.");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Finite-temperature quantum levels, shifts and dynamics";
    bind_errors(m);
    bind_model(m);
    bind_spectrum(m);
    bind_thermal(m);
    bind_oscillator(m);
    bind_spectroscopy(m);
    bind_dynamics(m);
    bind_multiparticle(m);
    bind_cli(m);
}
