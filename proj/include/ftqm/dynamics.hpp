#pragma once

#include "ftqm/eigensolver.hpp"
#include "ftqm/grid.hpp"
#include "ftqm/units.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ftqm {

using Complex = std::complex<double>;

/// Complex amplitude on a grid at time t and temperature T. `level` names
/// the stationary state it represents; superpositions leave it empty.
struct WaveField {
    std::vector<Complex> values;
    Grid1D grid;
    double t = 0.0;
    double T = 0.0;
    std::optional<std::size_t> level;

    static WaveField from_real(std::span<const double> psi, const Grid1D& grid, double T,
                               std::optional<std::size_t> level);

    /// sum_k |psi_k|^2 h
    double norm_squared() const;
};

/// exp(-i E t / hbar)
Complex phase_factor(double E, double t, const UnitSystem& units);

/// Exact stationary evolution from psi0.t to t with energy E_T.
WaveField evolve_stationary(const WaveField& psi0, double E_T, double t, const UnitSystem& units);

struct SuperpositionComponent {
    Complex coeff;
    WaveField psi;
    double E_T = 0.0;
};

/// sum_i c_i psi_i exp(-i E_i(T) (t - t_i) / hbar). Throws InvalidInput on
/// grid mismatch or when sum |c_i|^2 differs from one by more than 1e-10.
WaveField evolve_superposition(std::span<const SuperpositionComponent> components, double t,
                               const UnitSystem& units);

/// Frequency of the probability-density oscillation at grid node `node`,
/// measured from upward crossings of the mean density over [0, t_end]. Each
/// crossing is located by bisection on the exact time dependence.
double density_beat_frequency(std::span<const SuperpositionComponent> components,
                              std::size_t node, double t_end, std::size_t samples,
                              const UnitSystem& units);

struct LagrangianSample {
    std::vector<double> density;
    double total = 0.0;
};

/// Re[i hbar psi* dpsi/dt - hbar^2/(2m) |dpsi/dx|^2 - V |psi|^2
///    - k_B T ln(g p) |psi|^2] per node, with central differences for
/// dpsi/dx and zero values beyond the walls.
LagrangianSample lagrangian_density(const WaveField& psi, std::span<const Complex> dpsi_dt,
                                    double T, int g, double p, std::span<const double> potential,
                                    double mass, const UnitSystem& units);

/// max over psi and conj(psi) of ||(H + tau - E_T) psi|| / ||H psi|| on the
/// interior nodes. Throws InvalidInput when H psi vanishes.
double euler_lagrange_residual(const WaveField& psi, double E_T, double tau,
                               const TridiagonalHamiltonian& H);

} // namespace ftqm
