#include "fracfisher/clt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
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

/// Resamples a real, even, sampled spectrum at the rescaled frequencies
/// scale*xi by 4-point Lagrange interpolation in the u = |xi|^lambda
/// coordinate (the spectrum is a smooth function of u away from the band
/// end), with power-law extrapolation beyond the band.
std::vector<double> u_resample(const Grid& grid, const std::vector<double>& F_real,
                               double scale, double lambda) {
    const std::size_t n = grid.size();
    const std::size_t c = grid.center();
    const std::size_t m = n - c;  // nonnegative-frequency samples
    std::vector<double> u(m), vals(m);
    for (std::size_t i = 0; i < m; ++i) {
        u[i] = std::pow(grid.xi(c + i), lambda);
        vals[i] = F_real[c + i];
    }

    // Power-law tail model fitted on the outer three quarters of the band,
    // used for frequencies that rescale beyond it.
    bool tail_fitted = false;
    double tail_slope = 0.0, tail_lnK = 0.0;
    auto fit_tail = [&]() {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(u[i] > 0.25 * u[m - 1])) continue;
            const double lx = std::log(u[i]);
            const double ly = std::log(std::max(std::abs(vals[i]), 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++count;
        }
        const double denom = count * sxx - sx * sx;
        tail_slope = (count * sxy - sx * sy) / denom;
        tail_lnK = (sy - tail_slope * sx) / count;
        tail_fitted = true;
    };

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::pow(std::abs(scale * grid.xi(k)), lambda);
        if (t > u[m - 1]) {
            if (!tail_fitted) fit_tail();
            const double sg = vals[m - 1] >= 0.0 ? 1.0 : -1.0;
            out[k] = sg * std::exp(tail_lnK + tail_slope * std::log(t));
            continue;
        }
        std::size_t idx =
            static_cast<std::size_t>(std::lower_bound(u.begin(), u.end(), t) - u.begin());
        idx = idx > 0 ? idx - 1 : 0;
        idx = std::clamp<std::size_t>(idx, 1, m - 3);
        double r = 0.0;
        for (std::size_t a = idx - 1; a <= idx + 2; ++a) {
            double w = 1.0;
            for (std::size_t b = idx - 1; b <= idx + 2; ++b) {
                if (b != a) w *= (t - u[b]) / (u[a] - u[b]);
            }
            r += w * vals[a];
        }
        out[k] = r;
    }
    return out;
}

std::vector<double> sampled_spectrum(const DensityProfile& f) {
    const SpectralProfile F = forward_transform(f.as_real());
    std::vector<double> out(F.samples.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = F.samples[k].real();
    return out;
}

DensityProfile density_from_sampled_spectrum(const Grid& grid, const std::vector<double>& F,
                                             double tail_order, double tau_mass) {
    SpectralProfile sp;
    sp.grid = grid;
    sp.samples.resize(F.size());
    for (std::size_t k = 0; k < F.size(); ++k) sp.samples[k] = F[k];
    RealProfile r = inverse_transform(sp);
    return make_density_profile(grid, std::move(r.samples), tail_order, {}, tau_mass);
}

/// Deterministic stream generator (splitmix64) with uniforms strictly inside
/// (0, 1); avoids platform-dependent standard-library distributions.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double laplace() {
        const double u = uniform();
        return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
    }
};

}  // namespace

DensityProfile normalized_sum_density(const DensityProfile& f, int n, StableOrder order) {
    check_order(order.lambda);
    if (n < 1 || n > 32) {
        throw std::invalid_argument("normalized_sum_density: n must lie in 1..32");
    }
    if (n == 1) return f;
    const double lambda = order.lambda;
    const double r = std::pow(static_cast<double>(n), -1.0 / lambda);
    if (f.has_spectrum()) {
        const SpectrumFn base = f.spectrum_fn;
        const SpectrumFn composed = [base, r, n](double t) {
            return std::pow(base(r * t), n);
        };
        return density_from_spectrum(f.grid, composed, f.tail_order, f.tau_mass);
    }
    std::vector<double> F = u_resample(f.grid, sampled_spectrum(f), r, lambda);
    for (double& v : F) v = std::pow(v, n);
    return density_from_sampled_spectrum(f.grid, F, f.tail_order, f.tau_mass);
}

ScalingCheck scaling_identity_check(const DensityProfile& f, StableOrder order,
                                    double upsilon) {
    check_order(order.lambda);
    if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be positive");
    const double lambda = order.lambda;
    const double r = std::pow(upsilon, 1.0 / lambda);
    DensityProfile scaled;
    if (f.has_spectrum()) {
        const SpectrumFn base = f.spectrum_fn;
        const SpectrumFn composed = [base, r](double t) { return base(r * t); };
        scaled = density_from_spectrum(f.grid, composed, f.tail_order, f.tau_mass);
    } else {
        scaled = density_from_sampled_spectrum(
            f.grid, u_resample(f.grid, sampled_spectrum(f), r, lambda), f.tail_order,
            f.tau_mass);
    }
    ScalingCheck check;
    check.lhs = relative_fisher(scaled, order, upsilon).value;
    check.rhs = std::pow(upsilon, -2.0 * (1.0 - 1.0 / lambda)) *
                relative_fisher(f, order, 1.0).value;
    return check;
}

DensityProfile smooth_with_stable(const DensityProfile& f, double eps, StableOrder order) {
    check_order(order.lambda);
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("smooth_with_stable: eps must lie in [0, 1)");
    }
    if (eps == 0.0) return f;
    const double lambda = order.lambda;
    const double r = std::pow(1.0 - eps, 1.0 / lambda);
    if (f.has_spectrum()) {
        const SpectrumFn base = f.spectrum_fn;
        const SpectrumFn composed = [base, r, eps, lambda](double t) {
            return base(r * t) * std::exp(-eps * std::pow(std::abs(t), lambda));
        };
        return density_from_spectrum(f.grid, composed, f.tail_order, f.tau_mass);
    }
    std::vector<double> F = u_resample(f.grid, sampled_spectrum(f), r, lambda);
    for (std::size_t k = 0; k < F.size(); ++k) {
        F[k] *= std::exp(-eps * std::pow(std::abs(f.grid.xi(k)), lambda));
    }
    return density_from_sampled_spectrum(f.grid, F, f.tail_order, f.tau_mass);
}

ConvexityCheck blachman_stam_check(const DensityProfile& f1, const DensityProfile& f2,
                                   double delta, StableOrder order) {
    check_order(order.lambda);
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("blachman_stam_check: delta must lie in (0, 1)");
    }
    if (f1.grid != f2.grid) throw std::invalid_argument("blachman_stam_check: grids must match");
    const double lambda = order.lambda;
    const double r1 = std::pow(delta, 1.0 / lambda);
    const double r2 = std::pow(1.0 - delta, 1.0 / lambda);

    const FisherReport rep1 = relative_fisher(f1, order, 1.0);
    const FisherReport rep2 = relative_fisher(f2, order, 1.0);

    DensityProfile combined;
    if (f1.has_spectrum() && f2.has_spectrum()) {
        const SpectrumFn b1 = f1.spectrum_fn;
        const SpectrumFn b2 = f2.spectrum_fn;
        const SpectrumFn composed = [b1, b2, r1, r2](double t) {
            return b1(r1 * t) * b2(r2 * t);
        };
        combined = density_from_spectrum(f1.grid, composed, f1.tail_order,
                                         std::max(f1.tau_mass, f2.tau_mass));
    } else {
        std::vector<double> F1 = u_resample(f1.grid, sampled_spectrum(f1), r1, lambda);
        const std::vector<double> F2 = u_resample(f2.grid, sampled_spectrum(f2), r2, lambda);
        for (std::size_t k = 0; k < F1.size(); ++k) F1[k] *= F2[k];
        combined = density_from_sampled_spectrum(f1.grid, F1, f1.tail_order,
                                                 std::max(f1.tau_mass, f2.tau_mass));
    }
    const FisherReport repc = relative_fisher(combined, order, 1.0);

    ConvexityCheck check;
    check.lhs = repc.value;
    check.rhs = std::pow(delta, 2.0 / lambda) * rep1.value +
                std::pow(1.0 - delta, 2.0 / lambda) * rep2.value;
    check.tolerance =
        std::max(1e-4, 10.0 * std::max(repc.truncation_estimate,
                                       rep1.truncation_estimate + rep2.truncation_estimate));
    return check;
}

SweepReport monotonicity_sweep(const DensityProfile& f, StableOrder order, int n_max) {
    check_order(order.lambda);
    if (n_max < 1 || n_max > 32) {
        throw std::invalid_argument("monotonicity_sweep: n_max must lie in 1..32");
    }
    const double lambda = order.lambda;
    const double e = (2.0 - lambda) / lambda;

    SweepReport report;
    report.lambda = lambda;
    const FisherReport base = relative_fisher(f, order, 1.0);
    if (!std::isfinite(base.value)) {
        throw std::runtime_error("monotonicity_sweep: non-finite Fisher value at n = 1");
    }
    SweepEntry first;
    first.n = 1;
    first.fisher = base;
    first.step_bound = 0.0;
    first.global_bound = base.value;
    report.entries.push_back(first);

    double prev_value = base.value;
    double prev_trunc = base.truncation_estimate;
    for (int n = 2; n <= n_max; ++n) {
        const DensityProfile tn = normalized_sum_density(f, n, order);
        const FisherReport rep = relative_fisher(tn, order, 1.0);
        if (!std::isfinite(rep.value)) {
            throw std::runtime_error("monotonicity_sweep: non-finite Fisher value at n = " +
                                     std::to_string(n));
        }
        SweepEntry entry;
        entry.n = n;
        entry.fisher = rep;
        entry.step_bound = std::pow((n - 1.0) / n, e) * prev_value;
        entry.global_bound = std::pow(static_cast<double>(n), -e) * base.value;
        const double tol_step = 10.0 * std::max(rep.truncation_estimate, prev_trunc);
        const double tol_glob = 10.0 * std::max(rep.truncation_estimate, base.truncation_estimate);
        entry.step_ok = rep.value <= entry.step_bound + tol_step;
        entry.global_ok = rep.value <= entry.global_bound + tol_glob;
        report.entries.push_back(entry);
        prev_value = rep.value;
        prev_trunc = rep.truncation_estimate;
    }
    return report;
}

bool SweepReport::all_ok() const {
    for (const auto& e : entries) {
        if (!e.step_ok || !e.global_ok) return false;
    }
    return true;
}

std::string SweepReport::to_csv() const {
    std::string out = "n,fisher_value,step_bound,global_bound,truncation\n";
    for (const auto& e : entries) {
        out += std::to_string(e.n);
        out += ',';
        out += format_double(e.fisher.value);
        out += ',';
        out += format_double(e.step_bound);
        out += ',';
        out += format_double(e.global_bound);
        out += ',';
        out += format_double(e.fisher.truncation_estimate);
        out += '\n';
    }
    return out;
}

std::string SweepReport::to_json() const {
    std::string s = "{\"entries\":[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (i) s += ',';
        s += "{\"fisher_value\":" + format_double(e.fisher.value);
        s += ",\"global_bound\":" + format_double(e.global_bound);
        s += std::string(",\"global_ok\":") + (e.global_ok ? "true" : "false");
        s += ",\"n\":" + std::to_string(e.n);
        s += ",\"step_bound\":" + format_double(e.step_bound);
        s += std::string(",\"step_ok\":") + (e.step_ok ? "true" : "false");
        s += ",\"truncation\":" + format_double(e.fisher.truncation_estimate);
        s += "}";
    }
    s += "],\"lambda\":" + format_double(lambda) + "}";
    return s;
}

VarianceDropResult variance_drop_mc(int n, int m, UKernel kernel, BaseLaw base,
                                    std::int64_t samples, std::uint64_t seed) {
    if (!(m >= 1 && m <= n && n <= 8)) {
        throw std::invalid_argument("variance_drop_mc: requires 1 <= m <= n <= 8");
    }
    if (samples < 10000) {
        throw std::invalid_argument("variance_drop_mc: samples must be >= 10000");
    }
    if (kernel == UKernel::pair_product && m != 2) {
        throw std::invalid_argument("variance_drop_mc: pair_product kernel requires m = 2");
    }
    if (kernel == UKernel::linear && m != 1) {
        throw std::invalid_argument("variance_drop_mc: linear kernel requires m = 1");
    }

    const double second_moment = base == BaseLaw::gaussian ? 1.0 : 2.0;
    // All catalog kernels are the product over the chosen subset, so
    // E[Phi^2] = (E[x^2])^m for independent coordinates.
    const double phi_second = std::pow(second_moment, m);

    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) == m) subsets.push_back(mask);
    }
    const double n_subsets = static_cast<double>(subsets.size());

    SplitMix64 rng{seed};
    double acc2 = 0.0, acc4 = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::int64_t rep = 0; rep < samples; ++rep) {
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] =
                base == BaseLaw::gaussian ? rng.gaussian() : rng.laplace();
        }
        double sum = 0.0;
        for (unsigned mask : subsets) {
            double phi = 1.0;
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) phi *= x[static_cast<std::size_t>(i)];
            }
            sum += phi;
        }
        const double u = sum / n_subsets;
        const double u2 = u * u;
        acc2 += u2;
        acc4 += u2 * u2;
    }
    const double k = static_cast<double>(samples);
    VarianceDropResult result;
    result.var_u = acc2 / k;
    result.bound = (static_cast<double>(m) / n) * phi_second;
    result.stderr_ = std::sqrt(std::max(acc4 / k - result.var_u * result.var_u, 0.0) / k);
    result.ok = result.var_u <= result.bound + 3.0 * result.stderr_;
    return result;
}

}  // namespace fracfisher
