#include "fracfisher/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracfisher/spectral_ops.hpp"

namespace fracfisher {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(double lambda) {
    if (!(lambda > 1.0 && lambda <= 2.0)) {
        throw std::invalid_argument("stable order lambda must lie in (1, 2]");
    }
}

/// Periodized spectrum value at xi = 0 minus the direct term: the aliasing
/// mass excess sum_{m != 0} fn(2*band_edge*m), with the same explicit-terms
/// plus Euler-Maclaurin tail scheme as fold_spectrum.
double folded_zero_excess(const SpectrumFn& fn, double two_edge, int m_terms = 64) {
    std::complex<double> S{0.0, 0.0};
    std::complex<double> T_last{0.0, 0.0}, T_prev{0.0, 0.0};
    for (int m = 1; m <= m_terms; ++m) {
        const std::complex<double> T = fn(two_edge * m) + fn(-two_edge * m);
        S += T;
        T_prev = T_last;
        T_last = T;
    }
    const double M = static_cast<double>(m_terms);
    const double num = std::abs(T_last);
    const double den = std::abs(T_prev);
    if (num > 0.0 && den > 0.0 && num < den) {
        double s = std::log(den / num) / std::log(M / (M - 1.0));
        s = std::clamp(s, 1.05, 30.0);
        S += T_last * (M / (s - 1.0) - 0.5 + s / (12.0 * M));
    }
    return std::abs(S);
}

/// Value of the periodized Laplace density of rate s at |x| = ax:
/// (s/2) [e^{-s ax} + (e^{-s(2L-ax)} + e^{-s(2L+ax)}) / (1 - e^{-2sL})],
/// written overflow-safe for the full rate range of the mixture.
double periodized_laplace(double s, double ax, double L) {
    const double denom = -std::expm1(-2.0 * s * L);
    const double direct = std::exp(-s * ax);
    const double images = (std::exp(-s * (2.0 * L - ax)) + std::exp(-s * (2.0 * L + ax))) / denom;
    return 0.5 * s * (direct + images);
}

/// Mixture value at x = 0 with node spacing du; used by the node-doubling
/// convergence check of the mixture constructor.
double mixture_value_at_zero(double lambda, double L, double du) {
    const MixtureParams params{lambda, 2.0};
    double r = 0.0;
    for (int k = 0;; ++k) {
        const double u = -14.0 + du * k;
        if (u >= 116.0 + du / 2.0) break;
        const double s = std::exp(u);
        const double w = mixture_weight(s, params) * s * du;
        const double amp = 0.5 * s * w;
        if (amp < 1e-22) continue;
        r += periodized_laplace(s, 0.0, L) * w;
    }
    return r;
}

std::vector<double> mixture_samples(const Grid& grid, double lambda) {
    const double L = grid.x_max();
    const double du = 0.012;
    const std::size_t n = grid.size();
    const std::size_t c = grid.center();
    const MixtureParams params{lambda, 2.0};

    // Accumulate on |x| values only: indices c..n-1 cover x in [0, L-dx] and
    // index 0 carries |x| = L; the rest mirrors.
    std::vector<double> half(n - c + 1, 0.0);  // half[i] = value at x = i*dx, last entry x = L
    for (int k = 0;; ++k) {
        const double u = -14.0 + du * k;
        if (u >= 116.0 + du / 2.0) break;
        const double s = std::exp(u);
        const double w = mixture_weight(s, params) * s * du;
        const double amp = 0.5 * s * w;
        if (amp < 1e-22) continue;

        const double denom = -std::expm1(-2.0 * s * L);
        const bool need_images = s * L < 46.0;
        // Direct term is negligible past s*|x| = 46.
        const double ax_cut = 46.0 / s;
        const std::size_t i_max =
            need_images ? half.size() - 1
                        : std::min(half.size() - 1,
                                   static_cast<std::size_t>(ax_cut / grid.dx()) + 1);
        for (std::size_t i = 0; i <= i_max; ++i) {
            const double ax = std::min(static_cast<double>(i) * grid.dx(), L);
            double v = std::exp(-s * ax);
            if (need_images) {
                v += (std::exp(-s * (2.0 * L - ax)) + std::exp(-s * (2.0 * L + ax))) / denom;
            }
            half[i] += amp * v;
        }
    }

    // Node-doubling convergence check at the cusp x = 0.
    const double r0 = half[0];
    const double r0_fine = mixture_value_at_zero(lambda, L, du / 2.0);
    if (!(std::abs(r0_fine - r0) <= 1e-6 * std::max(std::abs(r0), 1e-300))) {
        throw std::runtime_error("linnik_density: mixture quadrature did not converge at x = 0");
    }

    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; c + i < n; ++i) out[c + i] = half[i];
    for (std::size_t j = 1; j < c; ++j) out[j] = out[n - j];
    out[0] = half[half.size() - 1];
    return out;
}

}  // namespace

SpectralProfile stable_spectrum(const Grid& grid, StableOrder order, double t) {
    check_order(order.lambda);
    if (!(t > 0.0)) throw std::invalid_argument("stable_spectrum: t must be positive");
    SpectralProfile F;
    F.grid = grid;
    F.samples.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        F.samples[k] = std::exp(-t * std::pow(std::abs(grid.xi(k)), order.lambda));
    }
    return F;
}

DensityProfile stable_density(const Grid& grid, StableOrder order, double t) {
    check_order(order.lambda);
    if (!(t > 0.0)) throw std::invalid_argument("stable_density: t must be positive");
    const double lambda = order.lambda;
    const SpectrumFn fn = [lambda, t](double u) {
        return std::complex<double>(std::exp(-t * std::pow(std::abs(u), lambda)), 0.0);
    };
    return density_from_spectrum(grid, fn, lambda, 1e-4);
}

SpectralProfile linnik_spectrum(const Grid& grid, StableOrder order) {
    check_order(order.lambda);
    SpectralProfile F;
    F.grid = grid;
    F.samples.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        F.samples[k] = 1.0 / (1.0 + std::pow(std::abs(grid.xi(k)), order.lambda));
    }
    return F;
}

double mixture_weight(double s, const MixtureParams& params) {
    if (!(params.a > 0.0 && params.a < params.b && params.b <= 2.0)) {
        throw std::invalid_argument("mixture_weight: requires 0 < a < b <= 2");
    }
    if (!(s > 0.0)) throw std::invalid_argument("mixture_weight: s must be positive");
    const double a = params.a, b = params.b;
    const double sa = std::pow(s, a);
    return (b / kPi) * std::sin(kPi * a / b) * std::pow(s, a - 1.0) /
           (1.0 + sa * sa + 2.0 * sa * std::cos(kPi * a / b));
}

DensityProfile linnik_density(const Grid& grid, StableOrder order, LinnikMethod method) {
    check_order(order.lambda);
    const double lambda = order.lambda;
    const SpectrumFn fn = [lambda](double u) {
        return std::complex<double>(1.0 / (1.0 + std::pow(std::abs(u), lambda)), 0.0);
    };
    const double excess = folded_zero_excess(fn, 2.0 * grid.band_edge());
    const double tau = std::max(1e-4, 2.0 * excess);
    if (method == LinnikMethod::inversion) {
        return density_from_spectrum(grid, fn, lambda, tau);
    }
    if (!(lambda < 2.0)) {
        throw std::invalid_argument("linnik_density: mixture method requires lambda < 2");
    }
    return make_density_profile(grid, mixture_samples(grid, lambda), lambda, fn, tau);
}

DensityProfile laplace_density(const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        v[j] = periodized_laplace(1.0, std::abs(grid.x(j)), grid.x_max());
    }
    const SpectrumFn fn = [](double u) {
        return std::complex<double>(1.0 / (1.0 + u * u), 0.0);
    };
    return make_density_profile(grid, std::move(v), 2.0, fn);
}

DensityProfile gaussian_density(const Grid& grid, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("gaussian_density: variance must be positive");
    const std::size_t n = grid.size();
    std::vector<double> v(n);
    const double norm = 1.0 / std::sqrt(2.0 * kPi * variance);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        v[j] = norm * std::exp(-x * x / (2.0 * variance));
    }
    const SpectrumFn fn = [variance](double u) {
        return std::complex<double>(std::exp(-0.5 * variance * u * u), 0.0);
    };
    return make_density_profile(grid, std::move(v), 2.0, fn);
}

TailEnvelope tail_envelope_fit(const DensityProfile& p, StableOrder order) {
    check_order(order.lambda);
    const Grid& grid = p.grid;
    const std::size_t n = grid.size();
    if (p.samples.size() != n) throw std::invalid_argument("profile samples do not match grid");
    for (double v : p.samples) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("tail_envelope_fit: density has a zero sample");
        }
    }
    const std::vector<double>& pint = p.interior.size() == n ? p.interior : p.samples;
    const double L = grid.x_max();
    const double q = 1.0 + order.lambda;

    // Minimal B over a log-spaced probe set in the tail region.
    const int n_probe = 64;
    const double lo = std::log(grid.dx());
    const double hi = std::log(0.999 * L);
    double B = 0.0;
    for (int i = 0; i < n_probe; ++i) {
        const double probe = std::exp(lo + (hi - lo) * i / (n_probe - 1.0));
        if (probe < L / 10.0) continue;
        // Linear interpolation of the interior view at the probe point.
        const double pos = (probe - (-L)) / grid.dx();
        const std::size_t j0 = std::min(static_cast<std::size_t>(pos), n - 2);
        const double t = pos - static_cast<double>(j0);
        const double pv = (1.0 - t) * pint[j0] + t * pint[j0 + 1];
        if (!(pv > 0.0)) {
            throw std::runtime_error(
                "tail_envelope_fit: no algebraic tail envelope at this resolution");
        }
        B = std::max(B, (1.0 / pv) / std::pow(probe, q));
    }

    double A = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(pint[j] > 0.0)) continue;
        const double ax = std::abs(grid.x(j));
        A = std::max(A, 1.0 / pint[j] - B * std::pow(ax, q));
    }
    if (!std::isfinite(A) || !std::isfinite(B) || !(B > 0.0)) {
        throw std::runtime_error("tail_envelope_fit: no algebraic tail envelope at this resolution");
    }
    return TailEnvelope{A, B};
}

double attraction_tail_constant(double lambda) {
    check_order(lambda);
    return std::tgamma(lambda) * std::sin(kPi * lambda / 2.0) / kPi;
}

}  // namespace fracfisher
