#include "fracfisher/attraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracfisher/reports.hpp"
#include "fracfisher/spectral_ops.hpp"

namespace fracfisher {

namespace {

void check_interior_order(double lambda) {
    if (!(lambda > 1.0 && lambda < 2.0)) {
        throw std::invalid_argument("operation requires lambda strictly inside (1, 2)");
    }
}

const std::vector<double>& interior_view(const DensityProfile& f) {
    return f.interior.size() == f.samples.size() ? f.interior : f.samples;
}

}  // namespace

namespace detail {

std::vector<double> g_interior_analytic(const Grid& grid, double lambda,
                                        double* leading_coeff) {
    check_interior_order(lambda);
    const SpectrumFn fn = [lambda](double t) {
        const double a = std::abs(t);
        return std::complex<double>(0.0, t * std::pow(a, 2.0 * lambda - 2.0)) /
               std::pow(1.0 + std::pow(a, lambda), 2.0);
    };
    SpectralProfile F{grid, fold_spectrum(grid, fn)};
    // The periodized odd spectrum vanishes identically at the unpaired
    // band-edge frequency; pin the bin so the tail model cannot leave a
    // spurious imaginary residue there.
    F.samples[0] = 0.0;
    RealProfile g = inverse_transform(F);
    deimage_odd(grid, g.samples, 2.0 * lambda, 3.0 * lambda, leading_coeff);
    return std::move(g.samples);
}

double jensen_weight_moment(double lambda) {
    check_interior_order(lambda);
    const MixtureParams params{lambda, 2.0};
    const double du = 0.002;
    const int steps = 27000;  // u from -14 to 40
    double sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double u = -14.0 + du * i;
        const double s = std::exp(u);
        // s^{lambda-2} g(s) ds = s^{lambda-1} g(s) du under s = e^u
        const double v = std::pow(s, lambda - 1.0) * mixture_weight(s, params);
        sum += (i == 0 || i == steps) ? 0.5 * v : v;
    }
    return sum * du;
}

}  // namespace detail

AttractionReport attraction_remainder(const SpectralProfile& F, StableOrder order) {
    const double lambda = order.lambda;
    if (!(lambda > 1.0 && lambda <= 2.0)) {
        throw std::invalid_argument("stable order lambda must lie in (1, 2]");
    }
    const Grid& grid = F.grid;
    const std::size_t n = grid.size();
    if (F.samples.size() != n) throw std::invalid_argument("profile samples do not match grid");
    const std::size_t c = grid.center();
    if (!(std::abs(F.samples[c] - 1.0) <= 1e-6)) {
        throw std::invalid_argument("attraction_remainder: F(0) must equal 1 within 1e-6");
    }

    AttractionReport report;
    report.lambda = lambda;
    report.tail_constant_c = attraction_tail_constant(lambda);
    report.xi.reserve(n - 1);
    report.R.reserve(n - 1);
    const double decade_hi = 10.0 * grid.dxi() * 1.0000001;
    double decade_max = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == c) continue;
        const double xi = grid.xi(k);
        const double axi = std::abs(xi);
        const double r = 1.0 - (1.0 - F.samples[k].real()) / std::pow(axi, lambda);
        report.xi.push_back(xi);
        report.R.push_back(r);
        if (axi <= decade_hi) decade_max = std::max(decade_max, std::abs(r));
    }
    report.smallest_decade_max = decade_max;
    report.consistent = decade_max < 0.1;
    return report;
}

FractionalMoment fractional_moment(const DensityProfile& f, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("fractional_moment: nu must be positive");
    const Grid& grid = f.grid;
    const std::size_t n = grid.size();
    if (f.samples.size() != n) throw std::invalid_argument("profile samples do not match grid");
    const std::vector<double>& fv = interior_view(f);
    const double half_extent = grid.x_max() / 2.0;

    std::vector<double> full(n), half(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double ax = std::abs(grid.x(j));
        full[j] = std::pow(ax, nu) * fv[j];
        if (ax <= half_extent) half[j] = full[j];
    }
    FractionalMoment moment;
    moment.value = grid.trapezoid(full);
    const double half_value = grid.trapezoid(half);
    moment.doubling_change =
        std::abs(moment.value - half_value) / std::max(moment.value, 1e-300);
    moment.stability = moment.doubling_change < 0.05
                           ? MomentStability::stable
                           : (moment.doubling_change > 0.20 ? MomentStability::divergent
                                                            : MomentStability::indeterminate);
    return moment;
}

SpectralProfile linnik_g_spectrum_analytic(const Grid& grid, StableOrder order) {
    check_interior_order(order.lambda);
    const double lambda = order.lambda;
    SpectralProfile F;
    F.grid = grid;
    F.samples.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double xi = grid.xi(k);
        const double a = std::abs(xi);
        F.samples[k] = std::complex<double>(0.0, xi * std::pow(a, 2.0 * lambda - 2.0)) /
                       std::pow(1.0 + std::pow(a, lambda), 2.0);
    }
    return F;
}

double g_equivalence_check(const Grid& grid, StableOrder order) {
    check_interior_order(order.lambda);
    const double lambda = order.lambda;
    const DensityProfile p = linnik_density(grid, order, LinnikMethod::inversion);
    const std::vector<double>& pint = interior_view(p);
    const auto Df = detail::density_fractional_derivative(p, lambda - 1.0);
    const auto g_ref = detail::g_interior_analytic(grid, lambda);

    std::vector<double> diff2(grid.size()), ref2(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double g_phys = Df[j] + grid.x(j) / lambda * pint[j];
        const double d = g_phys - g_ref[j];
        diff2[j] = d * d;
        ref2[j] = g_ref[j] * g_ref[j];
    }
    return std::sqrt(grid.trapezoid(diff2) / grid.trapezoid(ref2));
}

double interpolation_constant(double lambda) {
    check_interior_order(lambda);
    return 4.0 / (1.0 + lambda) *
           std::pow((3.0 - lambda) / (1.0 + lambda), (lambda - 3.0) / 4.0) *
           std::pow(2.0, (1.0 + lambda) * (3.0 - lambda) / 4.0);
}

HMomentBounds h_moment_bounds(const Grid& grid, StableOrder order) {
    check_interior_order(order.lambda);
    const double lambda = order.lambda;
    const SpectrumFn hhat = [lambda](double t) {
        const double a = std::abs(t);
        const double d = 1.0 + t * t;
        return std::complex<double>(0.0, (2.0 / lambda) * t * std::pow(a, lambda)) / (d * d);
    };

    // Physical-space kernel: plain inverse of the exact periodization (the
    // kernel is smooth with integrable tails; no clipping or image removal).
    SpectralProfile folded{grid, fold_spectrum(grid, hhat)};
    // Odd spectrum: its periodization is exactly zero at the band-edge bin.
    folded.samples[0] = 0.0;
    const RealProfile h = inverse_transform(folded);

    const std::size_t n = grid.size();
    std::vector<double> h2(n), x4h2(n), abs_h2(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.x(j);
        const double hh = h.samples[j] * h.samples[j];
        h2[j] = hh;
        x4h2[j] = x * x * x * x * hh;
        abs_h2[j] = std::pow(std::abs(x), 1.0 + lambda) * hh;
    }

    HMomentBounds bounds;
    bounds.l2 = grid.trapezoid(h2);
    bounds.x4 = grid.trapezoid(x4h2);
    bounds.direct = grid.trapezoid(abs_h2);

    // Plancherel route for the fourth moment: (1/2pi) integral |h_hat''|^2,
    // second derivative by centered divided differences of the raw spectrum.
    std::vector<std::complex<double>> H(n);
    for (std::size_t k = 0; k < n; ++k) H[k] = hhat(grid.xi(k));
    H[grid.center()] = 0.0;
    const double dxi = grid.dxi();
    std::vector<double> d2sq(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const std::complex<double> d2 = (H[k + 1] - 2.0 * H[k] + H[k - 1]) / (dxi * dxi);
        d2sq[k] = std::norm(d2);
    }
    double spec4 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        spec4 += (k == 0 || k == n - 1) ? 0.5 * d2sq[k] : d2sq[k];
    }
    bounds.x4_spectral = spec4 * dxi / (2.0 * std::numbers::pi);

    if (!(std::abs(bounds.x4 - bounds.x4_spectral) <= 0.01 * bounds.x4)) {
        throw std::runtime_error(
            "h_moment_bounds: physical and spectral fourth moments disagree by more than 1%");
    }
    bounds.interp = interpolation_constant(lambda) * std::pow(bounds.l2, (3.0 - lambda) / 4.0) *
                    std::pow(bounds.x4, (1.0 + lambda) / 4.0);
    return bounds;
}

FinitenessCertificate finiteness_certificate(const Grid& grid, StableOrder order) {
    check_interior_order(order.lambda);
    const double lambda = order.lambda;
    const DensityProfile p = linnik_density(grid, order, LinnikMethod::inversion);
    const FisherReport fisher = relative_fisher(p, order, 1.0);
    const TailEnvelope env = tail_envelope_fit(p, order);
    const auto g = detail::g_interior_analytic(grid, lambda);

    std::vector<double> integrand(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double ax = std::abs(grid.x(j));
        integrand[j] = g[j] * g[j] * (env.A + env.B * std::pow(ax, 1.0 + lambda));
    }

    FinitenessCertificate cert;
    cert.fisher = fisher.value;
    cert.envelope_bound = grid.trapezoid(integrand);
    cert.jensen_factor = detail::jensen_weight_moment(lambda);
    cert.envelope_A = env.A;
    cert.envelope_B = env.B;
    cert.ok = std::isfinite(cert.fisher) && std::isfinite(cert.envelope_bound) &&
              std::isfinite(cert.jensen_factor) &&
              cert.fisher <= cert.envelope_bound + 1e-6;
    return cert;
}

std::string AttractionReport::to_json() const {
    std::string s = "{";
    s += "\"lambda\":" + format_double(lambda);
    s += ",\"smallest_decade_max\":" + format_double(smallest_decade_max);
    s += ",\"tail_constant_c\":" + format_double(tail_constant_c);
    s += std::string(",\"verdict\":\"") + (consistent ? "consistent" : "inconsistent") + "\"";
    s += "}";
    return s;
}

std::string AttractionReport::trace_csv() const {
    std::string out = "xi,R\n";
    for (std::size_t i = 0; i < xi.size(); ++i) {
        out += format_double(xi[i]);
        out += ',';
        out += format_double(R[i]);
        out += '\n';
    }
    return out;
}

std::string FinitenessCertificate::to_json() const {
    std::string s = "{";
    s += "\"envelope_A\":" + format_double(envelope_A);
    s += ",\"envelope_B\":" + format_double(envelope_B);
    s += ",\"envelope_bound\":" + format_double(envelope_bound);
    s += ",\"fisher\":" + format_double(fisher);
    s += ",\"jensen_factor\":" + format_double(jensen_factor);
    s += std::string(",\"ok\":") + (ok ? "true" : "false");
    s += "}";
    return s;
}

}  // namespace fracfisher
