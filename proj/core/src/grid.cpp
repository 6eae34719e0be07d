#include "fracfisher/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracfisher {

Grid::Grid(std::size_t n, double x_max)
    : n_(n),
      x_max_(x_max),
      dx_(2.0 * x_max / static_cast<double>(n)),
      dxi_(std::numbers::pi / x_max) {}

Grid Grid::make(const GridSpec& spec) { return make(spec.n_points, spec.x_max); }

Grid Grid::make(std::size_t n_points, double x_max) {
    if (n_points < 64 || (n_points & (n_points - 1)) != 0) {
        throw std::invalid_argument("grid n_points must be a power of two >= 64");
    }
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw std::invalid_argument("grid x_max must be positive and finite");
    }
    return Grid(n_points, x_max);
}

double Grid::band_edge() const { return std::numbers::pi / dx_; }

double Grid::trapezoid(const std::vector<double>& samples) const {
    if (samples.size() != n_) {
        throw std::invalid_argument("trapezoid: sample count does not match grid");
    }
    double s = 0.0;
    for (double v : samples) s += v;
    s -= 0.5 * (samples.front() + samples.back());
    return s * dx_;
}

}  // namespace fracfisher
