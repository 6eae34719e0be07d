#include "fracfisher/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracfisher/reports.hpp"
#include "fracfisher/spectral_ops.hpp"

namespace fracfisher {

namespace {

void check_order(double lambda) {
    if (!(lambda > 1.0 && lambda <= 2.0)) {
        throw std::invalid_argument("stable order lambda must lie in (1, 2]");
    }
}

const std::vector<double>& interior_view(const DensityProfile& f) {
    return f.interior.size() == f.samples.size() ? f.interior : f.samples;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, t);
    return m;
}

}  // namespace

namespace detail {

std::vector<double> density_fractional_derivative(const DensityProfile& f, double alpha,
                                                  double* b1) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("density fractional derivative: alpha must lie in (0, 1]");
    }
    if (f.samples.size() != f.grid.size()) {
        throw std::invalid_argument("profile samples do not match grid");
    }
    auto mult = [alpha](double t) {
        const double sg = t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0);
        return std::complex<double>(0.0, sg * std::pow(std::abs(t), alpha));
    };
    auto out = apply_multiplier(f.grid, f.samples, f.spectrum_fn, mult, true);
    deimage_odd(f.grid, out, alpha + 1.0, alpha + f.tail_order + 1.0, b1);
    return out;
}

std::vector<double> fisher_integrand(const DensityProfile& f, StableOrder order,
                                     double upsilon, double* support_threshold) {
    check_order(order.lambda);
    if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be positive");
    const Grid& grid = f.grid;
    const std::size_t n = grid.size();
    const std::vector<double>& fv = interior_view(f);
    const auto Df = density_fractional_derivative(f, order.lambda - 1.0);

    const double eps = 1e-12 * max_of(fv);
    if (support_threshold) *support_threshold = eps;
    if (!(eps > 0.0)) throw std::runtime_error("fisher integrand: retained support is empty");

    std::vector<double> integ(n, 0.0);
    const double inv_lu = 1.0 / (order.lambda * upsilon);
    for (std::size_t j = 0; j < n; ++j) {
        if (fv[j] > eps) {
            const double rho = Df[j] / fv[j] + grid.x(j) * inv_lu;
            integ[j] = rho * rho * fv[j];
        }
    }
    // Origin bin: fractional scores of heavy-tailed symmetric laws jump (odd)
    // at x = 0 while the squared integrand is continuous; the sampled odd
    // value there is 0 and undercounts the bin, so use the neighbor average.
    const std::size_t c = grid.center();
    integ[c] = 0.5 * (integ[c - 1] + integ[c + 1]);
    return integ;
}

double integrand_truncation(const Grid& grid, const std::vector<double>& integrand,
                            double* slope) {
    if (slope) *slope = 0.0;
    const double L = grid.x_max();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    double window_max = 0.0;
    for (std::size_t j = 0; j < integrand.size(); ++j) {
        const double ax = std::abs(grid.x(j));
        if (ax < L / 4.0 || ax > 0.9 * L || !(integrand[j] > 0.0)) continue;
        const double lx = std::log(ax);
        const double ly = std::log(integrand[j]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
        window_max = std::max(window_max, integrand[j]);
    }
    // Below the noise floor (or without enough tail samples) the tail
    // contributes nothing resolvable; report zero truncation.
    if (count < 8 || window_max < 1e-12) return 0.0;
    const double denom = count * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) return 0.0;
    const double sl = (count * sxy - sx * sy) / denom;
    const double lnK = (sy - sl * sx) / count;
    if (slope) *slope = sl;
    if (!(sl < -1.0)) return std::numeric_limits<double>::infinity();
    return 2.0 * std::exp(lnK) * std::pow(L, sl + 1.0) / (-sl - 1.0);
}

}  // namespace detail

ScoreProfile fractional_score(const DensityProfile& f, StableOrder order) {
    check_order(order.lambda);
    const Grid& grid = f.grid;
    const std::size_t n = grid.size();
    const std::vector<double>& fv = interior_view(f);
    const auto Df = detail::density_fractional_derivative(f, order.lambda - 1.0);

    ScoreProfile score;
    score.grid = grid;
    score.samples.assign(n, 0.0);
    score.mask.assign(n, 0);
    score.support_threshold = 1e-12 * max_of(fv);
    if (!(score.support_threshold > 0.0)) {
        throw std::runtime_error("fractional_score: retained support is empty");
    }
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (fv[j] > score.support_threshold) {
            score.samples[j] = Df[j] / fv[j];
            score.mask[j] = 1;
            any = true;
        }
    }
    if (!any) throw std::runtime_error("fractional_score: retained support is empty");
    return score;
}

ScoreProfile relative_fractional_score(const DensityProfile& f, StableOrder order,
                                       double upsilon) {
    if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be positive");
    ScoreProfile score = fractional_score(f, order);
    const double inv_lu = 1.0 / (order.lambda * upsilon);
    for (std::size_t j = 0; j < score.samples.size(); ++j) {
        if (score.mask[j]) score.samples[j] += f.grid.x(j) * inv_lu;
    }
    return score;
}

FisherReport relative_fisher(const DensityProfile& f, StableOrder order, double upsilon) {
    FisherReport report;
    report.lambda = order.lambda;
    report.upsilon = upsilon;
    report.n_points = f.grid.size();
    report.x_max = f.grid.x_max();
    const auto integ = detail::fisher_integrand(f, order, upsilon, &report.support_threshold);
    report.value = f.grid.trapezoid(integ);
    report.truncation_estimate =
        detail::integrand_truncation(f.grid, integ, &report.tail_slope);
    return report;
}

double relative_fisher_gaussian(const DensityProfile& f, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const Grid& grid = f.grid;
    const std::size_t n = grid.size();
    const std::vector<double>& fv = interior_view(f);
    const auto Df = detail::density_fractional_derivative(f, 1.0);

    const double eps = 1e-12 * max_of(fv);
    if (!(eps > 0.0)) throw std::runtime_error("fisher integrand: retained support is empty");
    std::vector<double> integ(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (fv[j] > eps) {
            const double rho = Df[j] / fv[j] + grid.x(j) / sigma;
            integ[j] = rho * rho * fv[j];
        }
    }
    const std::size_t c = grid.center();
    integ[c] = 0.5 * (integ[c - 1] + integ[c + 1]);
    return grid.trapezoid(integ);
}

std::string FisherReport::to_json() const {
    std::string s = "{";
    s += "\"lambda\":" + format_double(lambda);
    s += ",\"n_points\":" + std::to_string(n_points);
    s += ",\"support_threshold\":" + format_double(support_threshold);
    s += ",\"truncation_estimate\":" + format_double(truncation_estimate);
    s += ",\"upsilon\":" + format_double(upsilon);
    s += ",\"value\":" + format_double(value);
    s += ",\"x_max\":" + format_double(x_max);
    s += "}";
    return s;
}

}  // namespace fracfisher
