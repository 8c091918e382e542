#pragma once

#include <cstddef>
#include <vector>

namespace ftqm {

/// Uniform grid on [x_min, x_max], endpoints included.
///
/// The endpoints carry Dirichlet walls: wavefunctions vanish there and only
/// the n_points - 2 interior nodes are unknowns of the discretized problem.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_points);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_points_; }
    std::size_t interior_size() const { return n_points_ - 2; }
    double spacing() const { return spacing_; }

    /// Coordinate of node k; the last node is exactly x_max.
    double x(std::size_t k) const;
    std::vector<double> points() const;

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_points_;
    double spacing_;
};

/// Throws InvalidInput for x_max <= x_min, non-finite bounds or n_points < 3.
Grid1D make_grid(double x_min, double x_max, std::size_t n_points);

} // namespace ftqm
