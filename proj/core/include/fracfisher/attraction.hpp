#pragma once

#include <string>
#include <vector>

#include "fracfisher/information.hpp"

namespace fracfisher {

/// Attraction-domain diagnostic from the characteristic function:
/// R(xi) = 1 - (1 - F(xi)) / |xi|^lambda on xi != 0. The law is consistent
/// with the attraction domain when R vanishes at small frequencies.
struct AttractionReport {
    double lambda = 0.0;
    std::vector<double> xi;   // nonzero grid frequencies
    std::vector<double> R;    // remainder values
    double tail_constant_c = 0.0;  // Gamma(lambda) sin(pi lambda/2) / pi
    double smallest_decade_max = 0.0;
    bool consistent = false;  // max |R| < 0.1 over the smallest frequency decade

    std::string to_json() const;
    std::string trace_csv() const;  // columns xi, R
};

/// Computes the remainder diagnostic for a sampled characteristic function.
/// Requires F(0) = 1 within 1e-6. The verdict window is the smallest decade
/// of grid frequencies, [dxi, 10*dxi].
AttractionReport attraction_remainder(const SpectralProfile& F, StableOrder order);

/// Trapezoid moment integral |x|^nu f(x) dx with an extent-doubling stability
/// classification: the moment over [-x_max/2, x_max/2] is compared against the
/// full extent; relative change < 5% is stable, > 20% divergent.
enum class MomentStability { stable, indeterminate, divergent };
struct FractionalMoment {
    double value = 0.0;
    double doubling_change = 0.0;
    MomentStability stability = MomentStability::stable;
};
FractionalMoment fractional_moment(const DensityProfile& f, double nu);

/// Closed-form spectrum of g_lambda = D_{lambda-1} p_lambda + (x/lambda) p_lambda:
/// samples of i xi |xi|^{2 lambda - 2} / (1 + |xi|^lambda)^2.
SpectralProfile linnik_g_spectrum_analytic(const Grid& grid, StableOrder order);

/// Relative L2 distance between g_lambda built from the score pipeline
/// (fractional derivative of the Linnik density plus the linear term) and the
/// inverse transform of the analytic spectrum. Contract: <= 1e-3.
double g_equivalence_check(const Grid& grid, StableOrder order);

/// Moment bounds for the mixture kernel h_lambda with spectrum
/// (2i/lambda) xi |xi|^lambda / (1+xi^2)^2:
///   l2     = integral h^2
///   x4     = integral x^4 h^2 (physical quadrature; must agree within 1% with
///            the spectral route (1/2pi) integral |h_hat''|^2 via second
///            divided differences, else std::runtime_error)
///   direct = integral |x|^{1+lambda} h^2
///   interp = C_lambda * l2^{(3-lambda)/4} * x4^{(1+lambda)/4}, the optimized
///            two-term interpolation bound; contract: direct <= interp.
struct HMomentBounds {
    double l2 = 0.0;
    double x4 = 0.0;
    double interp = 0.0;
    double direct = 0.0;
    double x4_spectral = 0.0;  // diagnostic: the Plancherel route value
};
HMomentBounds h_moment_bounds(const Grid& grid, StableOrder order);

/// Constant of the interpolation bound, from minimizing
/// (2R)^{1+lambda} l2 + R^{lambda-3} x4 over R > 0:
/// C = 4/(1+lambda) * ((3-lambda)/(1+lambda))^{(lambda-3)/4} * 2^{(1+lambda)(3-lambda)/4}.
double interpolation_constant(double lambda);

/// Finiteness certificate for the Linnik density: the computed Fisher value,
/// the envelope quadrature integral g^2 (A + B|x|^{1+lambda}), and the weight
/// moment integral s^{lambda-2} g(s,lambda,2) ds (Jensen step).
struct FinitenessCertificate {
    double fisher = 0.0;
    double envelope_bound = 0.0;
    double jensen_factor = 0.0;
    double envelope_A = 0.0;
    double envelope_B = 0.0;
    bool ok = false;  // fisher <= envelope_bound + tolerance and all finite

    std::string to_json() const;
};
FinitenessCertificate finiteness_certificate(const Grid& grid, StableOrder order);

namespace detail {

/// Physical-space g_lambda from the analytic spectrum: inverse of the folded
/// closed form with odd boundary images removed (exponent family {2l, 3l}).
std::vector<double> g_interior_analytic(const Grid& grid, double lambda,
                                        double* leading_coeff = nullptr);

/// Weight moment integral s^{lambda-2} g(s, lambda, 2) ds over (0, inf).
double jensen_weight_moment(double lambda);

}  // namespace detail

}  // namespace fracfisher
