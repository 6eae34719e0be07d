// Acceptance gate for the library: thirteen end-to-end criteria, one line
// of output each, with every tolerance pinned in this file. Exit status is
// the number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fracfisher/attraction.hpp"
#include "fracfisher/clt.hpp"
#include "fracfisher/diffusion.hpp"
#include "fracfisher/distributions.hpp"
#include "fracfisher/grid.hpp"
#include "fracfisher/information.hpp"
#include "fracfisher/profiles.hpp"
#include "fracfisher/reports.hpp"
#include "fracfisher/spectral_ops.hpp"

using namespace fracfisher;
using Clock = std::chrono::steady_clock;

namespace {

int g_index = 0;
int g_failures = 0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

using Verdict = std::pair<bool, std::string>;

template <typename Body>
void criterion(const char* name, Body&& body) {
    ++g_index;
    bool pass = false;
    std::string details;
    try {
        Verdict v = body();
        pass = v.first;
        details = std::move(v.second);
    } catch (const std::exception& e) {
        details = std::string("exception: ") + e.what();
    }
    if (!pass) ++g_failures;
    std::printf("[%2d/13] %s %s (%s)\n", g_index, pass ? "PASS" : "FAIL", name,
                details.c_str());
    std::fflush(stdout);
}

constexpr std::array<double, 3> kLambdas{1.2, 1.5, 1.8};

}  // namespace

int main() {
    std::printf("acceptance: relative fractional Fisher information library\n");

    const Grid ref = Grid::make(std::size_t{1} << 16, 200.0);

    std::array<DensityProfile, 3> linnik_cache{};
    std::array<bool, 3> linnik_built{};
    auto ref_linnik = [&](int i) -> const DensityProfile& {
        if (!linnik_built[static_cast<std::size_t>(i)]) {
            linnik_cache[static_cast<std::size_t>(i)] =
                linnik_density(ref, StableOrder{kLambdas[static_cast<std::size_t>(i)]});
            linnik_built[static_cast<std::size_t>(i)] = true;
        }
        return linnik_cache[static_cast<std::size_t>(i)];
    };

    std::array<DensityProfile, 3> stable_cache{};
    std::array<bool, 3> stable_built{};
    auto ref_stable = [&](int i) -> const DensityProfile& {
        if (!stable_built[static_cast<std::size_t>(i)]) {
            stable_cache[static_cast<std::size_t>(i)] =
                stable_density(ref, StableOrder{kLambdas[static_cast<std::size_t>(i)]});
            stable_built[static_cast<std::size_t>(i)] = true;
        }
        return stable_cache[static_cast<std::size_t>(i)];
    };

    // 1. The information functional vanishes at its fixed point.
    criterion("fixed-point vanishing of the information functional", [&]() -> Verdict {
        double max_i = 0.0, max_t = 0.0;
        for (double lam : kLambdas) {
            const auto t0 = Clock::now();
            const DensityProfile z = stable_density(ref, StableOrder{lam});
            const FisherReport rep = relative_fisher(z, StableOrder{lam}, 1.0);
            max_t = std::max(max_t, seconds_since(t0));
            max_i = std::max(max_i, rep.value);
        }
        const bool ok = max_i <= 1e-4 && max_t < 10.0;
        return {ok, "max I = " + fmt(max_i) + " <= 1e-4, max time " + fmt(max_t) +
                        " s < 10 s"};
    });

    // 2. Classical reduction at order 2 against the closed-form value.
    criterion("classical reduction at order 2", [&]() -> Verdict {
        const Grid g = Grid::make(16384, 60.0);
        const double at_fixed =
            relative_fisher(gaussian_density(g, 2.0), StableOrder{2.0}, 1.0).value;
        const double at_unit =
            relative_fisher(gaussian_density(g, 1.0), StableOrder{2.0}, 1.0).value;
        const bool ok = at_fixed <= 1e-6 && std::abs(at_unit - 0.25) <= 1e-3;
        return {ok, "I(var 2) = " + fmt(at_fixed) + " <= 1e-6, I(var 1) = " +
                        fmt(at_unit) + " within 0.25 +- 1e-3"};
    });

    // 3. The stable density is an eigenfunction of the fractional derivative.
    criterion("eigen-relation of the stable density", [&]() -> Verdict {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double lam = kLambdas[static_cast<std::size_t>(i)];
            const DensityProfile& z = ref_stable(i);
            const std::vector<double>& zin = z.interior.empty() ? z.samples : z.interior;
            const std::vector<double> dz =
                detail::density_fractional_derivative(z, lam - 1.0);
            double sup_r = 0.0, sup_z = 0.0;
            for (std::size_t j = 0; j < ref.size(); ++j) {
                sup_r = std::max(sup_r, std::abs(dz[j] + ref.x(j) / lam * zin[j]));
                sup_z = std::max(sup_z, std::abs(zin[j]));
            }
            worst = std::max(worst, sup_r / sup_z);
        }
        return {worst <= 1e-4, "max relative residual = " + fmt(worst) + " <= 1e-4"};
    });

    // 4. Monotonicity along normalized sums with the stated rate.
    criterion("monotonicity of the information along normalized sums", [&]() -> Verdict {
        bool all = true;
        double max_t = 0.0, last = 0.0;
        for (int i = 0; i < 3; ++i) {
            const auto t0 = Clock::now();
            const SweepReport rep =
                monotonicity_sweep(ref_linnik(i), StableOrder{kLambdas[static_cast<std::size_t>(i)]}, 8);
            max_t = std::max(max_t, seconds_since(t0));
            all = all && rep.all_ok();
            last = rep.entries.back().fisher.value;
        }
        const bool ok = all && max_t < 120.0;
        return {ok, std::string("step and global bounds hold for n = 2..8 at all ") +
                        "orders, I(T_8; 1.8) = " + fmt(last) + ", max time " +
                        fmt(max_t) + " s < 120 s"};
    });

    // 5. Subadditivity under weighted convolution, with equality at the fixed point.
    criterion("subadditivity under weighted convolution", [&]() -> Verdict {
        const Grid g = Grid::make(16384, 100.0);
        const StableOrder ord{1.5};
        const DensityProfile lin = linnik_density(g, ord);
        const DensityProfile sm = smooth_with_stable(lin, 0.3, ord);
        const DensityProfile z = stable_density(g, ord);
        const std::array<const DensityProfile*, 3> laws{&lin, &sm, &z};
        bool all = true;
        double min_margin = std::numeric_limits<double>::infinity();
        double eq_gap = 0.0;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                for (double delta : {0.25, 0.5, 0.75}) {
                    const ConvexityCheck c = blachman_stam_check(
                        *laws[static_cast<std::size_t>(a)],
                        *laws[static_cast<std::size_t>(b)], delta, ord);
                    all = all && c.lhs <= c.rhs + c.tolerance;
                    min_margin = std::min(min_margin, c.rhs + c.tolerance - c.lhs);
                    if (a == 2 && b == 2) eq_gap = std::max(eq_gap, std::abs(c.lhs - c.rhs));
                }
            }
        }
        const bool ok = all && eq_gap <= 1e-4;
        return {ok, "27 checks hold, min margin = " + fmt(min_margin) +
                        ", fixed-point equality gap = " + fmt(eq_gap) + " <= 1e-4"};
    });

    // 6. Scaling identity of the functional.
    criterion("scaling identity", [&]() -> Verdict {
        double worst = 0.0;
        for (double ups : {0.5, 2.0}) {
            const ScalingCheck s = scaling_identity_check(ref_linnik(1), StableOrder{1.5}, ups);
            worst = std::max(worst, std::abs(s.lhs - s.rhs) / std::abs(s.rhs));
        }
        return {worst <= 1e-3, "max relative disagreement = " + fmt(worst) + " <= 1e-3"};
    });

    // 7. Contraction under smoothing with the stable law.
    criterion("smoothing contraction", [&]() -> Verdict {
        const StableOrder ord{1.5};
        const DensityProfile& lin = ref_linnik(1);
        const FisherReport base = relative_fisher(lin, ord, 1.0);
        bool all = true;
        double min_margin = std::numeric_limits<double>::infinity();
        for (double eps : {0.1, 0.3, 0.5}) {
            const FisherReport rep =
                relative_fisher(smooth_with_stable(lin, eps, ord), ord, 1.0);
            const double tol =
                10.0 * (rep.truncation_estimate + base.truncation_estimate);
            const double bound = std::pow(1.0 - eps, 2.0 / 1.5) * base.value + tol;
            all = all && rep.value <= bound;
            min_margin = std::min(min_margin, bound - rep.value);
        }
        std::vector<double> vals;
        for (double eps : {0.2, 0.1, 0.05, 0.025}) {
            vals.push_back(relative_fisher(smooth_with_stable(lin, eps, ord), ord, 1.0).value);
        }
        const double d0 = vals[1] - vals[0];
        const double d1 = vals[2] - vals[1];
        const double d2 = vals[3] - vals[2];
        const bool shrink = d0 > d1 && d1 > d2;
        const bool ok = all && shrink;
        return {ok, "bound margin >= " + fmt(min_margin) + ", halving differences " +
                        fmt(d0) + " > " + fmt(d1) + " > " + fmt(d2)};
    });

    // 8. The two density constructions agree; the order-2 member is Laplace.
    criterion("mixture consistency of the heavy-tailed family", [&]() -> Verdict {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double lam = kLambdas[static_cast<std::size_t>(i)];
            const DensityProfile& inv = ref_linnik(i);
            const DensityProfile mix =
                linnik_density(ref, StableOrder{lam}, LinnikMethod::mixture);
            double sup = 0.0;
            for (std::size_t j = 0; j < ref.size(); ++j) {
                sup = std::max(sup, std::abs(inv.samples[j] - mix.samples[j]));
            }
            worst = std::max(worst, sup);
        }
        const DensityProfile p2 = linnik_density(ref, StableOrder{2.0});
        double sup2 = 0.0;
        for (std::size_t j = 0; j < ref.size(); ++j) {
            sup2 = std::max(sup2,
                            std::abs(p2.samples[j] - 0.5 * std::exp(-std::abs(ref.x(j)))));
        }
        const bool ok = worst <= 1e-4 && sup2 <= 1e-8;
        return {ok, "max construction gap = " + fmt(worst) +
                        " <= 1e-4, order-2 vs Laplace = " + fmt(sup2) + " <= 1e-8"};
    });

    // 9. Finiteness certificate and its supporting identities.
    criterion("finiteness certificate of the appendix bound", [&]() -> Verdict {
        bool all = true;
        double worst_geq = 0.0, worst_pl = 0.0;
        for (double lam : kLambdas) {
            const double geq = g_equivalence_check(ref, StableOrder{lam});
            worst_geq = std::max(worst_geq, geq);
            all = all && geq <= 1e-3;

            const HMomentBounds hm = h_moment_bounds(ref, StableOrder{lam});
            const double pl = std::abs(hm.x4_spectral / hm.x4 - 1.0);
            worst_pl = std::max(worst_pl, pl);
            all = all && pl <= 0.01 && hm.direct <= hm.interp;

            const FinitenessCertificate cert = finiteness_certificate(ref, StableOrder{lam});
            all = all && cert.fisher <= cert.envelope_bound &&
                  std::isfinite(cert.jensen_factor) && cert.ok;
        }
        return {all, "max score-identity gap = " + fmt(worst_geq) +
                         " <= 1e-3, max two-way moment gap = " + fmt(worst_pl) +
                         " <= 1%, direct <= interpolated and value <= envelope at all orders"};
    });

    // 10. Attraction-domain diagnostic: exact remainder, and a negative control.
    criterion("attraction-domain diagnostic", [&]() -> Verdict {
        double worst = 0.0;
        bool all_consistent = true;
        for (double lam : kLambdas) {
            const AttractionReport rep =
                attraction_remainder(linnik_spectrum(ref, StableOrder{lam}), StableOrder{lam});
            all_consistent = all_consistent && rep.consistent;
            for (std::size_t i = 0; i < rep.xi.size(); ++i) {
                const double u = std::pow(std::abs(rep.xi[i]), lam);
                worst = std::max(worst, std::abs(rep.R[i] - u / (1.0 + u)));
            }
        }
        const AttractionReport gauss =
            attraction_remainder(stable_spectrum(ref, StableOrder{2.0}), StableOrder{1.5});
        const bool ok = worst <= 1e-10 && all_consistent && !gauss.consistent;
        return {ok, "max closed-form gap = " + fmt(worst) +
                        " <= 1e-10, heavy-tailed laws consistent, light-tailed control " +
                        (gauss.consistent ? "NOT flagged" : "flagged inconsistent")};
    });

    // 11. Entropy bound along the fractional heat flow.
    criterion("entropy bounded by the information value", [&]() -> Verdict {
        const StableOrder ord{1.5};
        const EntropyReport rep = relative_entropy_lambda(ref_linnik(1), ord);
        const double bound = 3.0 * rep.fisher_at_zero + 1e-5;
        const EntropyReport repz = relative_entropy_lambda(ref_stable(1), ord);
        const bool ok = rep.value <= bound && repz.value <= 1e-3;
        return {ok, "H = " + fmt(rep.value) + " <= " + fmt(bound) +
                        ", quadrature tail bound = " + fmt(rep.tail_bound) +
                        ", H at fixed point = " + fmt(repz.value) + " <= 1e-3"};
    });

    // 12. Monte Carlo variance drop for product-kernel U-statistics.
    criterion("variance drop of U-statistics", [&]() -> Verdict {
        struct Case {
            int n, m;
            unsigned long long seed;
        };
        const std::array<Case, 3> cases{{{4, 1, 20240817ULL}, {4, 2, 20240818ULL}, {6, 3, 20240819ULL}}};
        bool all = true;
        double eq_gap = 0.0, eq_scale = 0.0;
        for (const Case& c : cases) {
            const VarianceDropResult r = variance_drop_mc(
                c.n, c.m, UKernel::product, BaseLaw::gaussian, 100000, c.seed);
            all = all && r.ok;
            if (c.m == 1) {
                eq_gap = std::abs(r.var_u - r.bound);
                eq_scale = 3.0 * r.stderr_;
            }
        }
        const bool ok = all && eq_gap <= eq_scale;
        return {ok, "Var(U) <= bound + 3 se for (m,n) in {(1,4),(2,4),(3,6)}, " +
                        std::string("independence-case gap = ") + fmt(eq_gap) +
                        " <= " + fmt(eq_scale)};
    });

    // 13. Determinism of full pipelines and seeded Monte Carlo.
    criterion("deterministic reports", [&]() -> Verdict {
        auto run = []() {
            const Grid g = Grid::make(16384, 100.0);
            const DensityProfile lin = linnik_density(g, StableOrder{1.5});
            return relative_fisher(lin, StableOrder{1.5}, 1.0).to_json();
        };
        const std::string a = run();
        const std::string b = run();
        const VarianceDropResult u1 =
            variance_drop_mc(4, 2, UKernel::product, BaseLaw::gaussian, 100000, 424242ULL);
        const VarianceDropResult u2 =
            variance_drop_mc(4, 2, UKernel::product, BaseLaw::gaussian, 100000, 424242ULL);
        const bool ok = a == b && u1.var_u == u2.var_u && u1.stderr_ == u2.stderr_;
        return {ok, std::string("pipeline reports byte-identical: ") +
                        (a == b ? "yes" : "NO") + ", seeded Monte Carlo bit-identical: " +
                        (u1.var_u == u2.var_u ? "yes" : "NO")};
    });

    std::printf("%d/13 criteria passed\n", 13 - g_failures);
    return g_failures;
}
