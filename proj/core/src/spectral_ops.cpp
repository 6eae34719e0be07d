#include "fracfisher/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracfisher/fft.hpp"

namespace fracfisher {

namespace {

double sign_of(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

double abs_peak(const std::vector<double>& v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

}  // namespace

SpectralProfile forward_transform(const RealProfile& f) {
    const Grid& grid = f.grid;
    const std::size_t n = grid.size();
    if (f.samples.size() != n) throw std::invalid_argument("profile samples do not match grid");
    std::vector<std::complex<double>> buf(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double alt = (j % 2 == 0) ? 1.0 : -1.0;
        buf[j] = alt * f.samples[j];
    }
    detail::dft_inplace(buf, true);
    const double scale = grid.dx();
    for (std::size_t k = 0; k < n; ++k) {
        const double alt = (k % 2 == 0) ? 1.0 : -1.0;
        buf[k] *= alt * scale;
    }
    return SpectralProfile{grid, std::move(buf)};
}

RealProfile inverse_transform(const SpectralProfile& F) {
    const Grid& grid = F.grid;
    const std::size_t n = grid.size();
    if (F.samples.size() != n) throw std::invalid_argument("profile samples do not match grid");

    double peak = 0.0;
    for (const auto& v : F.samples) peak = std::max(peak, std::abs(v));
    const double tol = 1e-8 * std::max(peak, 1e-300);
    if (std::abs(F.samples[0].imag()) > tol) {
        throw std::runtime_error("inverse_transform: spectrum is not conjugate symmetric");
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(F.samples[k] - std::conj(F.samples[n - k])) > tol) {
            throw std::runtime_error("inverse_transform: spectrum is not conjugate symmetric");
        }
    }

    std::vector<std::complex<double>> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double alt = (k % 2 == 0) ? 1.0 : -1.0;
        buf[k] = alt * F.samples[k];
    }
    detail::dft_inplace(buf, false);
    const double scale = grid.dxi() / (2.0 * std::numbers::pi);
    RealProfile out;
    out.grid = grid;
    out.samples.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double alt = (j % 2 == 0) ? 1.0 : -1.0;
        out.samples[j] = alt * scale * buf[j].real();
    }
    return out;
}

double riesz_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("riesz_constant: alpha must lie in (0, 1)");
    }
    const double g1 = std::tgamma((1.0 - alpha) / 2.0);
    const double g2 = std::tgamma(alpha / 2.0);
    return 1.0 / (std::sqrt(std::numbers::pi) * g1 * g2);
}

std::vector<std::complex<double>> fold_spectrum(const Grid& grid, const SpectrumFn& fn,
                                                int m_terms) {
    if (!fn) throw std::invalid_argument("fold_spectrum: empty spectrum callable");
    if (m_terms < 2) throw std::invalid_argument("fold_spectrum: m_terms must be >= 2");
    const std::size_t n = grid.size();
    const double two_edge = 2.0 * grid.band_edge();
    const double M = static_cast<double>(m_terms);
    const double log_ratio = std::log(M / (M - 1.0));

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = grid.xi(k);
        std::complex<double> S = fn(xi);
        std::complex<double> T_last{0.0, 0.0}, T_prev{0.0, 0.0};
        for (int m = 1; m <= m_terms; ++m) {
            const std::complex<double> T = fn(xi + two_edge * m) + fn(xi - two_edge * m);
            S += T;
            T_prev = T_last;
            T_last = T;
        }
        // Tail sum_{m > M} modelled as a*m^-s with the local decay exponent s
        // measured from the last two pair sums; Euler-Maclaurin anchored at M:
        // integral minus half endpoint plus first derivative term.
        const double num = std::abs(T_last);
        const double den = std::abs(T_prev);
        if (num > 0.0 && den > 0.0 && num < den) {
            double s = std::log(den / num) / log_ratio;
            s = std::clamp(s, 1.05, 30.0);
            S += T_last * (M / (s - 1.0) - 0.5 + s / (12.0 * M));
        }
        out[k] = S;
    }
    return out;
}

DensityProfile density_from_spectrum(const Grid& grid, const SpectrumFn& fn,
                                     double tail_order, double tau_mass) {
    SpectralProfile F{grid, fold_spectrum(grid, fn)};
    RealProfile r = inverse_transform(F);
    return make_density_profile(grid, std::move(r.samples), tail_order, fn, tau_mass);
}

namespace detail {

std::vector<double> apply_multiplier(const Grid& grid, const std::vector<double>& samples,
                                     const SpectrumFn& spectrum,
                                     const std::function<std::complex<double>(double)>& mult,
                                     bool zero_center) {
    const std::size_t n = grid.size();
    std::vector<std::complex<double>> G;
    if (spectrum) {
        const SpectrumFn composed = [&spectrum, &mult](double t) { return mult(t) * spectrum(t); };
        G = fold_spectrum(grid, composed);
    } else {
        RealProfile tmp;
        tmp.grid = grid;
        tmp.samples = samples;
        SpectralProfile F = forward_transform(tmp);
        G = std::move(F.samples);
        const std::complex<double> edge_bin = G[0];
        for (std::size_t k = 0; k < n; ++k) G[k] *= mult(grid.xi(k));
        // The band-edge bin sees both xi = -band_edge and its alias +band_edge;
        // use the symmetric average of the multiplier there (zero for odd ones).
        const double edge = grid.band_edge();
        G[0] = 0.5 * (mult(-edge) + mult(edge)) * edge_bin;
    }
    if (zero_center) G[grid.center()] = std::complex<double>(0.0, 0.0);

    std::vector<std::complex<double>> buf = std::move(G);
    for (std::size_t k = 0; k < n; ++k) {
        const double alt = (k % 2 == 0) ? 1.0 : -1.0;
        buf[k] *= alt;
    }
    dft_inplace(buf, false);
    const double scale = grid.dxi() / (2.0 * std::numbers::pi);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double alt = (j % 2 == 0) ? 1.0 : -1.0;
        out[j] = alt * scale * buf[j].real();
    }
    return out;
}

void deimage_odd(const Grid& grid, std::vector<double>& samples, double a1, double a2,
                 double* b1) {
    const auto img1 = image_sum_odd(grid, a1);
    const auto img2 = image_sum_odd(grid, a2);
    const TailFit fit = fit_tail_odd(grid, samples, a1, a2, img1, img2, 1e-15);
    if (b1) *b1 = fit.b1;
    if (!fit.fitted) return;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        samples[j] -= fit.b1 * img1[j] + fit.b2 * img2[j];
    }
}

void deimage_even(const Grid& grid, std::vector<double>& samples, double a1, double a2,
                  double* b1) {
    const auto img1 = image_sum_even(grid, a1);
    const auto img2 = image_sum_even(grid, a2);
    const TailFit fit = fit_tail_even(grid, samples, a1, a2, img1, img2, 1e-15);
    if (b1) *b1 = fit.b1;
    if (!fit.fitted) return;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        samples[j] -= fit.b1 * img1[j] + fit.b2 * img2[j];
    }
}

double boundary_ratio(const std::vector<double>& samples) {
    if (samples.empty()) return 0.0;
    const double peak = abs_peak(samples);
    if (!(peak > 0.0)) return 0.0;
    return std::max(std::abs(samples.front()), std::abs(samples.back())) / peak;
}

}  // namespace detail

namespace {

RealProfile multiplier_output(const Grid& grid, const std::vector<double>& input,
                              std::vector<double> out_samples) {
    RealProfile out;
    out.grid = grid;
    out.boundary_warning = detail::boundary_ratio(input) > 1e-6;
    out.truncation_estimate = detail::boundary_ratio(out_samples);
    out.samples = std::move(out_samples);
    return out;
}

}  // namespace

RealProfile riesz_potential(const RealProfile& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("riesz_potential: alpha must lie in (0, 1)");
    }
    if (f.samples.size() != f.grid.size()) {
        throw std::invalid_argument("profile samples do not match grid");
    }
    auto mult = [alpha](double t) {
        return std::complex<double>(std::pow(std::abs(t), alpha), 0.0);
    };
    auto out = detail::apply_multiplier(f.grid, f.samples, {}, mult, true);
    detail::deimage_even(f.grid, out, alpha + 1.0, 2.0 * alpha + 2.0);
    return multiplier_output(f.grid, f.samples, std::move(out));
}

RealProfile fractional_derivative(const RealProfile& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("fractional_derivative: alpha must lie in (0, 1)");
    }
    if (f.samples.size() != f.grid.size()) {
        throw std::invalid_argument("profile samples do not match grid");
    }
    auto mult = [alpha](double t) {
        return std::complex<double>(0.0, sign_of(t) * std::pow(std::abs(t), alpha));
    };
    auto out = detail::apply_multiplier(f.grid, f.samples, {}, mult, true);
    detail::deimage_odd(f.grid, out, alpha + 1.0, 2.0 * alpha + 2.0);
    return multiplier_output(f.grid, f.samples, std::move(out));
}

RealProfile convolve(const RealProfile& f, const RealProfile& g) {
    if (f.grid != g.grid) throw std::invalid_argument("convolve: grids must match");
    SpectralProfile F = forward_transform(f);
    const SpectralProfile G = forward_transform(g);
    for (std::size_t k = 0; k < F.samples.size(); ++k) F.samples[k] *= G.samples[k];
    return inverse_transform(F);
}

}  // namespace fracfisher
