#pragma once

#include <string>
#include <vector>

#include "fracfisher/distributions.hpp"
#include "fracfisher/profiles.hpp"

namespace fracfisher {

/// Value of the relative fractional Fisher information together with its
/// quadrature diagnostics.
struct FisherReport {
    double lambda = 0.0;
    double upsilon = 1.0;
    double value = 0.0;
    double support_threshold = 0.0;
    double truncation_estimate = 0.0;
    /// Fitted log-log slope of the integrand tail (diagnostic; the measured
    /// decay of the integrand is |x|^{1-3*lambda} for Linnik-class inputs).
    double tail_slope = 0.0;
    std::size_t n_points = 0;
    double x_max = 0.0;

    std::string to_json() const;
};

/// Score profile with its retained-support mask.
struct ScoreProfile {
    Grid grid;
    std::vector<double> samples;
    std::vector<char> mask;  // 1 where the density exceeded the threshold
    double support_threshold = 0.0;
};

/// Fractional score D_{lambda-1} f / f on {f > eps}, eps = 1e-12 * max f.
/// Samples outside the retained support are 0 with mask = 0.
/// Throws std::runtime_error when the retained support is empty.
ScoreProfile fractional_score(const DensityProfile& f, StableOrder order);

/// Relative fractional score: fractional_score + x/(lambda*upsilon) on the
/// retained support.
ScoreProfile relative_fractional_score(const DensityProfile& f, StableOrder order,
                                       double upsilon);

/// Relative fractional Fisher information
///   I_{lambda,upsilon}(f) = integral (D_{lambda-1}f/f + x/(lambda*upsilon))^2 f
/// over the retained support, trapezoid rule. The origin bin of the integrand
/// is replaced by its neighbor average: fractional scores of heavy-tailed
/// symmetric laws have an odd jump at x = 0 while the squared integrand is
/// continuous there, so the sampled odd value (zero) undercounts that bin.
FisherReport relative_fisher(const DensityProfile& f, StableOrder order, double upsilon);

/// Classical Fisher information relative to the Gaussian of variance sigma:
/// integral (f'/f + x/sigma)^2 f with the derivative taken spectrally.
double relative_fisher_gaussian(const DensityProfile& f, double sigma);

namespace detail {

/// Fractional derivative of a density using its spectrum descriptor when
/// available (exact fold of multiplier * spectrum), with odd boundary-image
/// removal in the exponent family {alpha+1, alpha+tail_order+1}.
/// Returns the fitted leading image coefficient through *b1 when non-null.
std::vector<double> density_fractional_derivative(const DensityProfile& f, double alpha,
                                                  double* b1 = nullptr);

/// Integrand of relative_fisher on the grid (with origin-bin patch applied).
std::vector<double> fisher_integrand(const DensityProfile& f, StableOrder order,
                                     double upsilon, double* support_threshold);

/// Truncation estimate: fits log integrand vs log |x| on the window
/// [x_max/4, 0.9*x_max] and extrapolates the fitted power law beyond the grid.
/// Returns 0 when the window has too few positive samples, and records the
/// fitted slope through *slope.
double integrand_truncation(const Grid& grid, const std::vector<double>& integrand,
                            double* slope);

}  // namespace detail

}  // namespace fracfisher
