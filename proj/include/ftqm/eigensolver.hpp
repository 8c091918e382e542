#pragma once

#include "ftqm/grid.hpp"
#include "ftqm/units.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace ftqm {

/// Second-order finite-difference form of -hbar^2/(2m) d^2/dx^2 + V on the
/// interior nodes of a grid with Dirichlet walls at both ends.
///
/// Row k corresponds to grid node k + 1. All off-diagonal entries are the
/// same hopping value -hbar^2 / (2 m h^2); the diagonal is
/// hbar^2 / (m h^2) + V.
class TridiagonalHamiltonian {
public:
    /// `potential` holds V on the interior nodes only.
    TridiagonalHamiltonian(std::vector<double> potential, double off_diagonal, Grid1D grid,
                           double mass);

    std::span<const double> diagonal() const { return diagonal_; }
    std::span<const double> potential() const { return potential_; }
    double off_diagonal() const { return off_diagonal_; }
    std::size_t dimension() const { return diagonal_.size(); }
    const Grid1D& grid() const { return grid_; }
    double mass() const { return mass_; }

    /// Gershgorin interval containing every eigenvalue.
    double lower_bound() const;
    double upper_bound() const;

    /// H x for an interior-length vector, evaluated as V x plus a scaled
    /// second difference to avoid cancellation against the large diagonal.
    std::vector<double> apply(std::span<const double> x) const;
    std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

    /// Number of eigenvalues strictly below `shift` (Sturm sequence count).
    std::size_t count_below(double shift) const;

private:
    std::vector<double> potential_;
    std::vector<double> diagonal_;
    double off_diagonal_;
    Grid1D grid_;
    double mass_;
};

TridiagonalHamiltonian discretize_hamiltonian(std::span<const double> potential,
                                              const Grid1D& grid, double mass,
                                              const UnitSystem& units);

/// Whether a level list is the whole spectrum of the system or the lowest
/// part of an infinite one. Partition sums over truncated spectra must pass
/// the tail bound (see thermal.hpp).
enum class SpectrumExtent { complete, truncated };

struct ZeroTLevel {
    double E0 = 0.0;
    int g = 1;
    /// Normalized eigenfunction on the full grid (zero at the walls).
    std::optional<std::vector<double>> psi;
};

class ZeroTSpectrum {
public:
    /// Throws InvalidInput on an empty list, non-ascending energies or g < 1.
    ZeroTSpectrum(std::vector<ZeroTLevel> levels, SpectrumExtent extent,
                  std::optional<Grid1D> grid = std::nullopt);

    static ZeroTSpectrum from_energies(std::span<const double> energies,
                                       std::span<const int> degeneracies, SpectrumExtent extent);

    const std::vector<ZeroTLevel>& levels() const { return levels_; }
    const ZeroTLevel& operator[](std::size_t i) const { return levels_.at(i); }
    std::size_t size() const { return levels_.size(); }
    SpectrumExtent extent() const { return extent_; }
    const std::optional<Grid1D>& grid() const { return grid_; }

    std::vector<double> energies() const;
    std::vector<int> degeneracies() const;

private:
    std::vector<ZeroTLevel> levels_;
    SpectrumExtent extent_;
    std::optional<Grid1D> grid_;
};

struct EigenOptions {
    int max_inverse_iterations = 10;
    /// Target for ||H psi - E psi|| / ||H psi||.
    double residual_tol = 1e-10;
};

/// The `count` lowest eigenpairs by Sturm bisection and inverse iteration.
/// Every level gets g = 1 and a normalized eigenfunction whose first
/// significant component is positive. The result is marked truncated.
ZeroTSpectrum solve_spectrum(const TridiagonalHamiltonian& H, std::size_t count,
                             const EigenOptions& options = {});

/// Eigenvalues only, same ordering and accuracy as solve_spectrum.
std::vector<double> lowest_eigenvalues(const TridiagonalHamiltonian& H, std::size_t count);

struct ExplicitDegeneracies {
    std::vector<int> g;
};
struct ClusterDegeneracies {
    double tolerance = 1e-6;
};
struct AllOnes {};

using DegeneracyPolicy = std::variant<ExplicitDegeneracies, ClusterDegeneracies, AllOnes>;

/// Explicit copies the table. Cluster merges runs of levels separated by
/// gaps <= tolerance into one level with g = multiplicity and E0 = mean; a
/// merged level carries no eigenfunction. AllOnes resets every g to 1.
ZeroTSpectrum assign_degeneracies(const ZeroTSpectrum& spectrum, const DegeneracyPolicy& policy);

} // namespace ftqm
