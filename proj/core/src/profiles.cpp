#include "fracfisher/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracfisher/reports.hpp"

namespace fracfisher {

namespace detail {

namespace {
constexpr int kImageTerms = 8;

// Solves the 2x2 least-squares problem min ||b1*B1 + b2*B2 - v|| over the
// window indices. Returns false when the normal equations are singular.
bool solve_two_term(const std::vector<double>& B1, const std::vector<double>& B2,
                    const std::vector<double>& v, const std::vector<std::size_t>& idx,
                    double* b1, double* b2) {
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t j : idx) {
        g11 += B1[j] * B1[j];
        g12 += B1[j] * B2[j];
        g22 += B2[j] * B2[j];
        r1 += B1[j] * v[j];
        r2 += B2[j] * v[j];
    }
    const double det = g11 * g22 - g12 * g12;
    if (!(std::abs(det) > 1e-300 * std::max(g11 * g22, 1e-300))) return false;
    *b1 = (r1 * g22 - r2 * g12) / det;
    *b2 = (r2 * g11 - r1 * g12) / det;
    return true;
}

std::vector<std::size_t> fit_window(const Grid& grid) {
    const double L = grid.x_max();
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double ax = std::abs(grid.x(j));
        if (ax >= 0.55 * L && ax <= 0.98 * L) idx.push_back(j);
    }
    return idx;
}

double abs_max(const std::vector<double>& v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

double window_abs_max(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
    double m = 0.0;
    for (std::size_t j : idx) m = std::max(m, std::abs(v[j]));
    return m;
}

}  // namespace

std::vector<double> image_sum_even(const Grid& grid, double q) {
    const double L = grid.x_max();
    const std::size_t n = grid.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        double acc = 0.0;
        for (int m = 1; m <= kImageTerms; ++m) {
            acc += std::pow(std::abs(x + 2.0 * L * m), -q) +
                   std::pow(std::abs(x - 2.0 * L * m), -q);
        }
        const double a = 2.0 * L * (kImageTerms + 0.5);
        acc += (std::pow(a + x, 1.0 - q) + std::pow(a - x, 1.0 - q)) / (2.0 * L * (q - 1.0));
        s[j] = acc;
    }
    return s;
}

std::vector<double> image_sum_odd(const Grid& grid, double q) {
    const double L = grid.x_max();
    const std::size_t n = grid.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        double acc = 0.0;
        for (int m = 1; m <= kImageTerms; ++m) {
            acc += std::pow(2.0 * L * m + x, -q) - std::pow(2.0 * L * m - x, -q);
        }
        const double a = 2.0 * L * (kImageTerms + 0.5);
        acc += (std::pow(a + x, 1.0 - q) - std::pow(a - x, 1.0 - q)) / (2.0 * L * (q - 1.0));
        s[j] = acc;
    }
    return s;
}

TailFit fit_tail_even(const Grid& grid, const std::vector<double>& v, double a1, double a2,
                      const std::vector<double>& img1, const std::vector<double>& img2,
                      double skip_rel) {
    TailFit fit;
    const auto idx = fit_window(grid);
    if (idx.empty()) return fit;
    if (!(window_abs_max(v, idx) > skip_rel * abs_max(v))) return fit;
    const std::size_t n = grid.size();
    std::vector<double> B1(n, 0.0), B2(n, 0.0);
    for (std::size_t j : idx) {
        const double ax = std::abs(grid.x(j));
        B1[j] = std::pow(ax, -a1) + img1[j];
        B2[j] = std::pow(ax, -a2) + img2[j];
    }
    fit.fitted = solve_two_term(B1, B2, v, idx, &fit.b1, &fit.b2);
    if (!fit.fitted) fit.b1 = fit.b2 = 0.0;
    return fit;
}

TailFit fit_tail_odd(const Grid& grid, const std::vector<double>& v, double a1, double a2,
                     const std::vector<double>& img1, const std::vector<double>& img2,
                     double skip_rel) {
    TailFit fit;
    const auto idx = fit_window(grid);
    if (idx.empty()) return fit;
    if (!(window_abs_max(v, idx) > skip_rel * abs_max(v))) return fit;
    const std::size_t n = grid.size();
    std::vector<double> B1(n, 0.0), B2(n, 0.0);
    for (std::size_t j : idx) {
        const double x = grid.x(j);
        const double ax = std::abs(x);
        const double sg = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
        B1[j] = sg * std::pow(ax, -a1) + img1[j];
        B2[j] = sg * std::pow(ax, -a2) + img2[j];
    }
    fit.fitted = solve_two_term(B1, B2, v, idx, &fit.b1, &fit.b2);
    if (!fit.fitted) fit.b1 = fit.b2 = 0.0;
    return fit;
}

}  // namespace detail

DensityProfile make_density_profile(const Grid& grid, std::vector<double> samples,
                                    double tail_order, SpectrumFn spectrum_fn,
                                    double tau_mass) {
    if (samples.size() != grid.size()) {
        throw std::invalid_argument("density samples do not match grid");
    }
    DensityProfile p;
    p.grid = grid;
    p.tail_order = tail_order;
    p.tau_mass = tau_mass;
    p.spectrum_fn = std::move(spectrum_fn);

    double clipped = 0.0;
    for (double& v : samples) {
        if (v < 0.0) {
            clipped -= v;
            v = 0.0;
        }
    }
    p.clipped_mass = clipped * grid.dx();
    p.samples = std::move(samples);
    p.mass_deficit = std::abs(1.0 - grid.trapezoid(p.samples));

    const auto img1 = detail::image_sum_even(grid, 1.0 + tail_order);
    const auto img2 = detail::image_sum_even(grid, 1.0 + 2.0 * tail_order);
    const auto fit = detail::fit_tail_even(grid, p.samples, 1.0 + tail_order,
                                           1.0 + 2.0 * tail_order, img1, img2, 1e-13);
    p.tail_coefficient = fit.b1;
    p.interior = p.samples;
    if (fit.fitted) {
        for (std::size_t j = 0; j < p.interior.size(); ++j) {
            p.interior[j] = std::max(p.interior[j] - fit.b1 * img1[j] - fit.b2 * img2[j], 0.0);
        }
    }
    return p;
}

namespace {

std::string profile_header(const Grid& grid, double mass_deficit) {
    std::ostringstream os;
    os << "# n_points=" << grid.size() << " x_max=" << format_double(grid.x_max())
       << " mass_deficit=" << format_double(mass_deficit) << "\n";
    return os.str();
}

}  // namespace

std::string to_csv(const RealProfile& p) {
    std::string out = profile_header(p.grid, 0.0);
    out += "x,value\n";
    for (std::size_t j = 0; j < p.samples.size(); ++j) {
        out += format_double(p.grid.x(j));
        out += ',';
        out += format_double(p.samples[j]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const DensityProfile& p) {
    std::string out = profile_header(p.grid, p.mass_deficit);
    out += "x,value\n";
    for (std::size_t j = 0; j < p.samples.size(); ++j) {
        out += format_double(p.grid.x(j));
        out += ',';
        out += format_double(p.samples[j]);
        out += '\n';
    }
    return out;
}

std::string to_csv(const SpectralProfile& p) {
    std::string out = profile_header(p.grid, 0.0);
    out += "xi,re,im\n";
    for (std::size_t k = 0; k < p.samples.size(); ++k) {
        out += format_double(p.grid.xi(k));
        out += ',';
        out += format_double(p.samples[k].real());
        out += ',';
        out += format_double(p.samples[k].imag());
        out += '\n';
    }
    return out;
}

}  // namespace fracfisher
