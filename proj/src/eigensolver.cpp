#include "ftqm/eigensolver.hpp"

#include "ftqm/error.hpp"
#include "overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace ftqm {

using detail::overloaded;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string format_sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

/// LU factorization of the shifted tridiagonal matrix T - shift I with
/// partial pivoting (the dgttrf/dgttrs scheme). Zero pivots are replaced by
/// a tiny multiple of the matrix norm so that the factor can be used for
/// inverse iteration at an (almost) exact eigenvalue.
class ShiftedTridiagonalLU {
public:
    ShiftedTridiagonalLU(std::span<const double> diag, double off, double shift, double norm)
        : n_(diag.size()), dl_(n_ > 0 ? n_ - 1 : 0, off), d_(n_), du_(n_ > 0 ? n_ - 1 : 0, off),
          du2_(n_ > 1 ? n_ - 2 : 0, 0.0), swapped_(n_ > 0 ? n_ - 1 : 0, false)
    {
        for (std::size_t i = 0; i < n_; ++i) {
            d_[i] = diag[i] - shift;
        }
        const double tiny = kEps * std::max(norm, std::numeric_limits<double>::min());
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] == 0.0) {
                    d_[i] = tiny;
                }
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < n_) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swapped_[i] = true;
            }
        }
        for (double& v : d_) {
            if (v == 0.0) {
                v = tiny;
            }
        }
    }

    void solve_in_place(std::vector<double>& b) const
    {
        for (std::size_t i = 0; i + 1 < n_; ++i) {
            if (!swapped_[i]) {
                b[i + 1] -= dl_[i] * b[i];
            } else {
                const double temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - dl_[i] * b[i];
            }
        }
        const std::size_t last = n_ - 1;
        b[last] /= d_[last];
        if (n_ > 1) {
            b[last - 1] = (b[last - 1] - du_[last - 1] * b[last]) / d_[last - 1];
        }
        for (std::size_t k = n_ >= 2 ? n_ - 2 : 0; k-- > 0;) {
            b[k] = (b[k] - du_[k] * b[k + 1] - du2_[k] * b[k + 2]) / d_[k];
        }
    }

private:
    std::size_t n_;
    std::vector<double> dl_;
    std::vector<double> d_;
    std::vector<double> du_;
    std::vector<double> du2_;
    std::vector<bool> swapped_;
};

double two_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

void scale(std::vector<double>& v, double factor)
{
    for (double& x : v) {
        x *= factor;
    }
}

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const TridiagonalHamiltonian& H, std::size_t k)
{
    double lo = H.lower_bound();
    double hi = H.upper_bound();
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) {
            break;
        }
        if (H.count_below(mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Deterministic start vector in (-1, 1); raw mt19937_64 output is fixed by
/// the standard, distribution objects are not.
std::vector<double> start_vector(std::size_t n, std::size_t k)
{
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + k);
    std::vector<double> v(n);
    for (double& x : v) {
        x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    }
    return v;
}

} // namespace

TridiagonalHamiltonian::TridiagonalHamiltonian(std::vector<double> potential, double off_diagonal,
                                               Grid1D grid, double mass)
    : potential_(std::move(potential)), diagonal_(potential_.size()), off_diagonal_(off_diagonal),
      grid_(grid), mass_(mass)
{
    if (potential_.size() != grid_.interior_size()) {
        throw InvalidInput("Hamiltonian needs one potential value per interior grid node");
    }
    if (!(mass_ > 0.0)) {
        throw InvalidInput("mass must be positive");
    }
    for (std::size_t i = 0; i < potential_.size(); ++i) {
        diagonal_[i] = potential_[i] - 2.0 * off_diagonal_;
    }
}

double TridiagonalHamiltonian::lower_bound() const
{
    const double radius = 2.0 * std::abs(off_diagonal_);
    const double dmin = *std::min_element(diagonal_.begin(), diagonal_.end());
    return dmin - radius - kEps * std::max(std::abs(dmin), radius);
}

double TridiagonalHamiltonian::upper_bound() const
{
    const double radius = 2.0 * std::abs(off_diagonal_);
    const double dmax = *std::max_element(diagonal_.begin(), diagonal_.end());
    return dmax + radius + kEps * std::max(std::abs(dmax), radius);
}

namespace {

template <class T>
std::vector<T> apply_stencil(std::span<const double> potential, double off_diagonal,
                             std::span<const T> x)
{
    const std::size_t n = potential.size();
    if (x.size() != n) {
        throw InvalidInput("vector length does not match the Hamiltonian dimension");
    }
    const double hop = -off_diagonal;
    std::vector<T> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const T left = i > 0 ? x[i - 1] : T{};
        const T right = i + 1 < n ? x[i + 1] : T{};
        y[i] = potential[i] * x[i] + hop * ((x[i] - left) + (x[i] - right));
    }
    return y;
}

} // namespace

std::vector<double> TridiagonalHamiltonian::apply(std::span<const double> x) const
{
    return apply_stencil<double>(potential_, off_diagonal_, x);
}

std::vector<std::complex<double>>
TridiagonalHamiltonian::apply(std::span<const std::complex<double>> x) const
{
    return apply_stencil<std::complex<double>>(potential_, off_diagonal_, x);
}

std::size_t TridiagonalHamiltonian::count_below(double shift) const
{
    const double e2 = off_diagonal_ * off_diagonal_;
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, e2);
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diagonal_.size(); ++i) {
        q = (diagonal_[i] - shift) - (i > 0 ? e2 / q : 0.0);
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

TridiagonalHamiltonian discretize_hamiltonian(std::span<const double> potential,
                                              const Grid1D& grid, double mass,
                                              const UnitSystem& units)
{
    if (potential.size() != grid.size()) {
        throw InvalidInput("potential has " + std::to_string(potential.size()) +
                           " samples for a grid of " + std::to_string(grid.size()) + " points");
    }
    if (!(mass > 0.0)) {
        throw InvalidInput("mass must be positive");
    }
    const double h = grid.spacing();
    const double hop = units.hbar() * units.hbar() / (2.0 * mass * h * h);
    std::vector<double> interior(potential.begin() + 1, potential.end() - 1);
    return TridiagonalHamiltonian(std::move(interior), -hop, grid, mass);
}

ZeroTSpectrum::ZeroTSpectrum(std::vector<ZeroTLevel> levels, SpectrumExtent extent,
                             std::optional<Grid1D> grid)
    : levels_(std::move(levels)), extent_(extent), grid_(std::move(grid))
{
    if (levels_.empty()) {
        throw InvalidInput("spectrum must contain at least one level");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const ZeroTLevel& level = levels_[i];
        if (!std::isfinite(level.E0)) {
            throw InvalidInput("level energies must be finite");
        }
        if (level.g < 1) {
            throw InvalidInput("degeneracy of level " + std::to_string(i) + " must be >= 1");
        }
        if (i > 0 && !(level.E0 > levels_[i - 1].E0)) {
            throw InvalidInput("level energies must be strictly ascending");
        }
        if (level.psi && (!grid_ || level.psi->size() != grid_->size())) {
            throw InvalidInput("eigenfunction length does not match the spectrum grid");
        }
    }
}

ZeroTSpectrum ZeroTSpectrum::from_energies(std::span<const double> energies,
                                           std::span<const int> degeneracies,
                                           SpectrumExtent extent)
{
    if (energies.size() != degeneracies.size()) {
        throw InvalidInput("energy and degeneracy lists differ in length");
    }
    std::vector<ZeroTLevel> levels(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        levels[i].E0 = energies[i];
        levels[i].g = degeneracies[i];
    }
    return ZeroTSpectrum(std::move(levels), extent);
}

std::vector<double> ZeroTSpectrum::energies() const
{
    std::vector<double> out(levels_.size());
    std::transform(levels_.begin(), levels_.end(), out.begin(), [](const ZeroTLevel& l) { return l.E0; });
    return out;
}

std::vector<int> ZeroTSpectrum::degeneracies() const
{
    std::vector<int> out(levels_.size());
    std::transform(levels_.begin(), levels_.end(), out.begin(), [](const ZeroTLevel& l) { return l.g; });
    return out;
}

std::vector<double> lowest_eigenvalues(const TridiagonalHamiltonian& H, std::size_t count)
{
    if (count < 1 || count > H.dimension()) {
        throw InvalidInput("requested " + std::to_string(count) + " levels; valid range is 1.." +
                           std::to_string(H.dimension()));
    }
    std::vector<double> values(count);
    for (std::size_t k = 0; k < count; ++k) {
        values[k] = bisect_eigenvalue(H, k);
    }
    return values;
}

ZeroTSpectrum solve_spectrum(const TridiagonalHamiltonian& H, std::size_t count,
                             const EigenOptions& options)
{
    const std::vector<double> values = lowest_eigenvalues(H, count);
    const std::size_t n = H.dimension();
    const double norm = std::max(std::abs(H.lower_bound()), std::abs(H.upper_bound()));
    const double cluster_gap = 1e-3 * norm;
    const double h = H.grid().spacing();

    std::vector<std::vector<double>> vectors;
    vectors.reserve(count);
    std::vector<ZeroTLevel> levels;
    levels.reserve(count);

    for (std::size_t k = 0; k < count; ++k) {
        const double lambda = values[k];
        if (k > 0 && !(lambda > values[k - 1])) {
            throw ConvergenceError("eigenvalues " + std::to_string(k - 1) + " and " +
                                   std::to_string(k) + " are not resolved in double precision");
        }
        const ShiftedTridiagonalLU lu(H.diagonal(), H.off_diagonal(), lambda, norm);
        std::vector<double> x = start_vector(n, k);
        scale(x, 1.0 / two_norm(x));

        bool converged = false;
        double residual = 0.0;
        double rayleigh = lambda;
        for (int iter = 0; iter < options.max_inverse_iterations; ++iter) {
            lu.solve_in_place(x);
            scale(x, 1.0 / two_norm(x));
            for (std::size_t j = k; j-- > 0;) {
                if (lambda - values[j] > cluster_gap) {
                    break;
                }
                const std::vector<double>& v = vectors[j];
                const double overlap = std::inner_product(v.begin(), v.end(), x.begin(), 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] -= overlap * v[i];
                }
            }
            scale(x, 1.0 / two_norm(x));

            std::vector<double> hx = H.apply(x);
            const double hx_norm = two_norm(hx);
            rayleigh = std::inner_product(x.begin(), x.end(), hx.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                hx[i] -= rayleigh * x[i];
            }
            residual = two_norm(hx);
            if (iter > 0 && residual <= options.residual_tol * hx_norm + 16.0 * kEps * norm) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("inverse iteration for level " + std::to_string(k) +
                                   " did not converge within " +
                                   std::to_string(options.max_inverse_iterations) +
                                   " iterations (residual " + format_sci(residual) + ")");
        }

        double xmax = 0.0;
        for (double v : x) {
            xmax = std::max(xmax, std::abs(v));
        }
        for (double v : x) {
            if (std::abs(v) > 1e-6 * xmax) {
                if (v < 0.0) {
                    scale(x, -1.0);
                }
                break;
            }
        }
        vectors.push_back(x);

        std::vector<double> psi(H.grid().size(), 0.0);
        const double grid_norm = 1.0 / std::sqrt(h);
        for (std::size_t i = 0; i < n; ++i) {
            psi[i + 1] = x[i] * grid_norm;
        }
        if (!levels.empty() && !(rayleigh > levels.back().E0)) {
            throw ConvergenceError("eigenvalues " + std::to_string(k - 1) + " and " +
                                   std::to_string(k) + " are not resolved in double precision");
        }
        levels.push_back(ZeroTLevel{rayleigh, 1, std::move(psi)});
    }
    return ZeroTSpectrum(std::move(levels), SpectrumExtent::truncated, H.grid());
}

ZeroTSpectrum assign_degeneracies(const ZeroTSpectrum& spectrum, const DegeneracyPolicy& policy)
{
    return std::visit(
        overloaded{
            [&](const ExplicitDegeneracies& table) {
                if (table.g.size() != spectrum.size()) {
                    throw InvalidInput("degeneracy table has " + std::to_string(table.g.size()) +
                                       " entries for " + std::to_string(spectrum.size()) + " levels");
                }
                std::vector<ZeroTLevel> levels = spectrum.levels();
                for (std::size_t i = 0; i < levels.size(); ++i) {
                    if (table.g[i] < 1) {
                        throw InvalidInput("degeneracy entries must be integers >= 1");
                    }
                    levels[i].g = table.g[i];
                }
                return ZeroTSpectrum(std::move(levels), spectrum.extent(), spectrum.grid());
            },
            [&](const ClusterDegeneracies& cluster) {
                if (!(cluster.tolerance > 0.0)) {
                    throw InvalidInput("cluster tolerance must be positive");
                }
                const auto& in = spectrum.levels();
                std::vector<ZeroTLevel> levels;
                std::size_t start = 0;
                while (start < in.size()) {
                    std::size_t end = start + 1;
                    while (end < in.size() && in[end].E0 - in[end - 1].E0 <= cluster.tolerance) {
                        ++end;
                    }
                    if (end - start == 1) {
                        levels.push_back(in[start]);
                    } else {
                        double sum = 0.0;
                        int g = 0;
                        for (std::size_t i = start; i < end; ++i) {
                            sum += in[i].E0;
                            g += in[i].g;
                        }
                        levels.push_back(ZeroTLevel{sum / static_cast<double>(end - start), g, std::nullopt});
                    }
                    start = end;
                }
                return ZeroTSpectrum(std::move(levels), spectrum.extent(), spectrum.grid());
            },
            [&](const AllOnes&) {
                std::vector<ZeroTLevel> levels = spectrum.levels();
                for (ZeroTLevel& level : levels) {
                    level.g = 1;
                }
                return ZeroTSpectrum(std::move(levels), spectrum.extent(), spectrum.grid());
            },
        },
        policy);
}

} // namespace ftqm
