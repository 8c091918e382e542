#include "ftqm/dynamics.hpp"

#include "ftqm/error.hpp"
#include "ftqm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ftqm {

namespace {

void check_components(std::span<const SuperpositionComponent> components)
{
    if (components.empty()) {
        throw InvalidInput("superposition needs at least one component");
    }
    double weight = 0.0;
    for (const SuperpositionComponent& c : components) {
        if (!(c.psi.grid == components.front().psi.grid)) {
            throw InvalidInput("superposition components live on different grids");
        }
        if (c.psi.values.size() != c.psi.grid.size()) {
            throw InvalidInput("wave field length does not match its grid");
        }
        weight += std::norm(c.coeff);
    }
    if (std::abs(weight - 1.0) > 1e-10) {
        throw InvalidInput("superposition coefficients are not normalized (sum |c|^2 = " +
                           std::to_string(weight) + ")");
    }
}

double density_at(std::span<const SuperpositionComponent> components, std::size_t node, double t,
                  const UnitSystem& units)
{
    Complex amp{0.0, 0.0};
    for (const SuperpositionComponent& c : components) {
        amp += c.coeff * c.psi.values[node] * phase_factor(c.E_T, t - c.psi.t, units);
    }
    return std::norm(amp);
}

} // namespace

WaveField WaveField::from_real(std::span<const double> psi, const Grid1D& grid, double T,
                               std::optional<std::size_t> level)
{
    if (psi.size() != grid.size()) {
        throw InvalidInput("wave function length does not match the grid");
    }
    WaveField field{std::vector<Complex>(psi.begin(), psi.end()), grid, 0.0, T, level};
    return field;
}

double WaveField::norm_squared() const
{
    double s = 0.0;
    for (const Complex& v : values) {
        s += std::norm(v);
    }
    return s * grid.spacing();
}

Complex phase_factor(double E, double t, const UnitSystem& units)
{
    return std::polar(1.0, -E * t / units.hbar());
}

WaveField evolve_stationary(const WaveField& psi0, double E_T, double t, const UnitSystem& units)
{
    const Complex phase = phase_factor(E_T, t - psi0.t, units);
    WaveField out = psi0;
    for (Complex& v : out.values) {
        v *= phase;
    }
    out.t = t;
    return out;
}

WaveField evolve_superposition(std::span<const SuperpositionComponent> components, double t,
                               const UnitSystem& units)
{
    check_components(components);
    const SuperpositionComponent& first = components.front();
    WaveField out{std::vector<Complex>(first.psi.grid.size()), first.psi.grid, t, first.psi.T,
                  components.size() == 1 ? first.psi.level : std::nullopt};
    for (const SuperpositionComponent& c : components) {
        const Complex factor = c.coeff * phase_factor(c.E_T, t - c.psi.t, units);
        for (std::size_t k = 0; k < out.values.size(); ++k) {
            out.values[k] += factor * c.psi.values[k];
        }
    }
    return out;
}

double density_beat_frequency(std::span<const SuperpositionComponent> components,
                              std::size_t node, double t_end, std::size_t samples,
                              const UnitSystem& units)
{
    check_components(components);
    if (node >= components.front().psi.grid.size()) {
        throw InvalidInput("node index outside the grid");
    }
    if (!(t_end > 0.0) || samples < 4) {
        throw InvalidInput("beat measurement needs t_end > 0 and at least 4 samples");
    }
    const double dt = t_end / static_cast<double>(samples - 1);
    std::vector<double> rho(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        rho[s] = density_at(components, node, static_cast<double>(s) * dt, units);
    }
    double level = 0.0;
    for (double r : rho) {
        level += r;
    }
    level /= static_cast<double>(samples);

    std::vector<double> upward;
    for (std::size_t s = 0; s + 1 < samples; ++s) {
        if (rho[s] < level && rho[s + 1] >= level) {
            double lo = static_cast<double>(s) * dt;
            double hi = static_cast<double>(s + 1) * dt;
            for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) {
                    break;
                }
                if (density_at(components, node, mid, units) < level) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            upward.push_back(0.5 * (lo + hi));
        }
    }
    if (upward.size() < 2) {
        throw InvalidInput("density completes fewer than two oscillations in the window");
    }
    return static_cast<double>(upward.size() - 1) / (upward.back() - upward.front());
}

LagrangianSample lagrangian_density(const WaveField& psi, std::span<const Complex> dpsi_dt,
                                    double T, int g, double p, std::span<const double> potential,
                                    double mass, const UnitSystem& units)
{
    const std::size_t n = psi.grid.size();
    if (psi.values.size() != n || dpsi_dt.size() != n || potential.size() != n) {
        throw InvalidInput("Lagrangian inputs must all have one value per grid node");
    }
    if (!(mass > 0.0)) {
        throw InvalidInput("mass must be positive");
    }
    const double tau = temperature_term(T, g, p, units);
    const double h = psi.grid.spacing();
    const double kinetic = units.hbar() * units.hbar() / (2.0 * mass);
    const Complex i_hbar{0.0, units.hbar()};

    LagrangianSample out;
    out.density.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex left = k > 0 ? psi.values[k - 1] : Complex{};
        const Complex right = k + 1 < n ? psi.values[k + 1] : Complex{};
        const Complex dpsi_dx = (right - left) / (2.0 * h);
        const double density_sq = std::norm(psi.values[k]);
        const double time_term = (i_hbar * std::conj(psi.values[k]) * dpsi_dt[k]).real();
        out.density[k] =
            time_term - kinetic * std::norm(dpsi_dx) - potential[k] * density_sq - tau * density_sq;
        out.total += out.density[k];
    }
    out.total *= h;
    return out;
}

double euler_lagrange_residual(const WaveField& psi, double E_T, double tau,
                               const TridiagonalHamiltonian& H)
{
    if (!(psi.grid == H.grid()) || psi.values.size() != psi.grid.size()) {
        throw InvalidInput("wave field and Hamiltonian are defined on different grids");
    }
    auto residual = [&](bool conjugate) {
        std::vector<Complex> interior(psi.values.begin() + 1, psi.values.end() - 1);
        if (conjugate) {
            for (Complex& v : interior) {
                v = std::conj(v);
            }
        }
        const std::vector<Complex> hpsi = H.apply(interior);
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = 0; k < interior.size(); ++k) {
            num += std::norm(hpsi[k] + (tau - E_T) * interior[k]);
            den += std::norm(hpsi[k]);
        }
        if (!(den > 0.0)) {
            throw InvalidInput("H psi vanishes; residual is undefined for a null field");
        }
        return std::sqrt(num / den);
    };
    return std::max(residual(false), residual(true));
}

} // namespace ftqm
