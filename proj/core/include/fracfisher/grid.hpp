#pragma once

#include <cstddef>
#include <vector>

namespace fracfisher {

/// Parameters of the uniform symmetric grid shared by all profiles.
struct GridSpec {
    std::size_t n_points = 65536;
    double x_max = 200.0;
};

/// Uniform symmetric spatial grid x_j = -x_max + j*dx, j = 0..n-1, together
/// with its conjugate frequency grid xi_k = (k - n/2)*dxi, dxi = pi/x_max.
/// The point x = +x_max is not a sample; the grid is the usual periodic
/// discretization of [-x_max, x_max).
class Grid {
public:
    /// Empty sentinel (size 0); real grids come from make().
    Grid() = default;

    /// Validates and builds a grid. n_points must be a power of two >= 64,
    /// x_max must be positive; otherwise throws std::invalid_argument.
    static Grid make(const GridSpec& spec);
    static Grid make(std::size_t n_points, double x_max);

    std::size_t size() const { return n_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }
    double dxi() const { return dxi_; }

    double x(std::size_t j) const { return -x_max_ + dx_ * static_cast<double>(j); }
    double xi(std::size_t k) const {
        return (static_cast<double>(k) - static_cast<double>(n_) / 2.0) * dxi_;
    }

    /// Index of the x = 0 (and xi = 0) sample.
    std::size_t center() const { return n_ / 2; }

    /// Largest resolvable frequency magnitude, pi/dx.
    double band_edge() const;

    /// Trapezoid quadrature of samples over [-x_max, x_max - dx].
    double trapezoid(const std::vector<double>& samples) const;

    bool operator==(const Grid& other) const {
        return n_ == other.n_ && x_max_ == other.x_max_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    Grid(std::size_t n, double x_max);

    std::size_t n_ = 0;
    double x_max_ = 0.0;
    double dx_ = 0.0;
    double dxi_ = 0.0;
};

}  // namespace fracfisher
