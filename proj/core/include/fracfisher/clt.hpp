#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracfisher/information.hpp"

namespace fracfisher {

/// Per-n record of the monotonicity sweep.
struct SweepEntry {
    int n = 0;
    FisherReport fisher;
    /// ((n-1)/n)^{(2-lambda)/lambda} * I(T_{n-1}); 0 for n = 1.
    double step_bound = 0.0;
    /// n^{-(2-lambda)/lambda} * I(X).
    double global_bound = 0.0;
    bool step_ok = true;
    bool global_ok = true;
};

struct SweepReport {
    double lambda = 0.0;
    std::vector<SweepEntry> entries;

    bool all_ok() const;
    std::string to_csv() const;   // columns n, fisher_value, step_bound, global_bound, truncation
    std::string to_json() const;
};

/// Density of the normalized sum T_n = n^{-1/lambda} (X_1 + ... + X_n):
/// spectrum f_hat(xi * n^{-1/lambda})^n. Uses the closed-form descriptor when
/// the input carries one; otherwise resamples the discrete spectrum by cubic
/// (4-point Lagrange) interpolation in the u = |xi|^lambda coordinate with
/// power-law extrapolation beyond the band.
DensityProfile normalized_sum_density(const DensityProfile& f, int n, StableOrder order);

/// Both sides of the scaling identity
///   I_{lambda,upsilon}(upsilon^{1/lambda} X) = upsilon^{-2(1-1/lambda)} I_lambda(X).
struct ScalingCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};
ScalingCheck scaling_identity_check(const DensityProfile& f, StableOrder order,
                                    double upsilon);

/// Density of X_eps = (1-eps)^{1/lambda} X + eps^{1/lambda} Z, the stable
/// smoothing of f: spectrum f_hat(xi (1-eps)^{1/lambda}) e^{-eps |xi|^lambda}.
DensityProfile smooth_with_stable(const DensityProfile& f, double eps, StableOrder order);

/// Both sides of the convolution subadditivity check
///   I_lambda(delta^{1/lambda} X1 + (1-delta)^{1/lambda} X2)
///     <= delta^{2/lambda} I_lambda(X1) + (1-delta)^{2/lambda} I_lambda(X2).
struct ConvexityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
};
ConvexityCheck blachman_stam_check(const DensityProfile& f1, const DensityProfile& f2,
                                   double delta, StableOrder order);

/// Fisher-information sweep over T_n, n = 1..n_max (n_max <= 32), with the
/// per-step and global decay bounds. Inequalities use additive tolerance
/// 10 * (sum of the truncation estimates of the quantities involved).
SweepReport monotonicity_sweep(const DensityProfile& f, StableOrder order, int n_max);

enum class UKernel { product, pair_product, linear };
enum class BaseLaw { gaussian, laplace };

/// Monte Carlo check of the variance-drop inequality E[U^2] <= (m/n) E[Phi^2]
/// for the U-statistic built from a symmetric mean-zero kernel.
struct VarianceDropResult {
    double var_u = 0.0;
    double bound = 0.0;      // (m/n) * E[Phi^2], closed form
    double stderr_ = 0.0;    // standard error of the var_u estimate
    bool ok = false;         // var_u <= bound + 3*stderr_
};
/// samples must be >= 1e4 (otherwise std::invalid_argument); deterministic in
/// seed. Kernels: product Phi = x1*...*xm; pair_product Phi = x1*x2 (m = 2);
/// linear Phi = x (m = 1).
VarianceDropResult variance_drop_mc(int n, int m, UKernel kernel, BaseLaw base,
                                    std::int64_t samples, std::uint64_t seed);

}  // namespace fracfisher
