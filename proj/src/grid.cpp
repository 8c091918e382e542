#include "ftqm/grid.hpp"

#include "ftqm/error.hpp"

#include <cmath>

namespace ftqm {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), spacing_(0.0)
{
    if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw InvalidInput("grid bounds must be finite");
    }
    if (!(x_max > x_min)) {
        throw InvalidInput("degenerate grid interval: x_max must exceed x_min");
    }
    if (n_points < 3) {
        throw InvalidInput("grid needs at least 3 points");
    }
    spacing_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

double Grid1D::x(std::size_t k) const
{
    if (k + 1 == n_points_) {
        return x_max_;
    }
    return x_min_ + static_cast<double>(k) * spacing_;
}

std::vector<double> Grid1D::points() const
{
    std::vector<double> xs(n_points_);
    for (std::size_t k = 0; k < n_points_; ++k) {
        xs[k] = x(k);
    }
    return xs;
}

Grid1D make_grid(double x_min, double x_max, std::size_t n_points)
{
    return Grid1D(x_min, x_max, n_points);
}

} // namespace ftqm
