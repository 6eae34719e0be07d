#pragma once

#include "fracfisher/profiles.hpp"

namespace fracfisher {

/// Order parameter of a symmetric stable law, 1 < lambda <= 2
/// (lambda = 2 is the Gaussian consistency case).
struct StableOrder {
    double lambda = 1.5;
};

/// Parameters of the mixture weight g(s, a, b), 0 < a < b <= 2.
struct MixtureParams {
    double a = 1.5;
    double b = 2.0;
};

/// Samples of the stable characteristic function e^{-t|xi|^lambda} on the
/// frequency grid (raw closed form, not periodized).
SpectralProfile stable_spectrum(const Grid& grid, StableOrder order, double t = 1.0);

/// Symmetric stable density of order lambda at time scale t, built by exact
/// spectral periodization of e^{-t|xi|^lambda}.
DensityProfile stable_density(const Grid& grid, StableOrder order, double t = 1.0);

/// Samples of the Linnik characteristic function 1/(1+|xi|^lambda)
/// (raw closed form, not periodized).
SpectralProfile linnik_spectrum(const Grid& grid, StableOrder order);

/// Mixture weight g(s, a, b) = (b/pi) sin(pi a/b) s^{a-1} / (1 + s^{2a} + 2 s^a cos(pi a/b)).
double mixture_weight(double s, const MixtureParams& params);

enum class LinnikMethod { inversion, mixture };

/// Linnik density of order lambda, 1 < lambda <= 2.
///
/// inversion: exact spectral periodization of 1/(1+|xi|^lambda).
/// mixture:   scale mixture of periodized Laplace densities with weight
///            g(s, lambda, 2) on s = e^u, u in [-14, 116], trapezoid rule
///            (requires lambda < 2); a node-doubling convergence check at the
///            cusp x = 0 must move the value by less than 1e-6.
DensityProfile linnik_density(const Grid& grid, StableOrder order,
                              LinnikMethod method = LinnikMethod::inversion);

/// Closed-form Laplace density e^{-|x|}/2 sampled with its periodic images
/// (the b = 2 base of the mixture representation).
DensityProfile laplace_density(const Grid& grid);

/// Unit-variance-family Gaussian density with variance `variance`, sampled in
/// closed form (periodization is negligible at any supported grid).
DensityProfile gaussian_density(const Grid& grid, double variance);

/// Tail envelope constants (A, B) with 1/p(x) <= A + B|x|^{1+lambda} at every
/// grid point, B minimized over a log-spaced probe set in the tail.
/// Throws std::invalid_argument when the density has a zero sample.
struct TailEnvelope {
    double A = 0.0;
    double B = 0.0;
};
TailEnvelope tail_envelope_fit(const DensityProfile& p, StableOrder order);

/// Distribution-tail constant of the attraction domain,
/// c = Gamma(lambda) sin(pi lambda/2) / pi; the density tail constant is
/// lambda * c.
double attraction_tail_constant(double lambda);

}  // namespace fracfisher
