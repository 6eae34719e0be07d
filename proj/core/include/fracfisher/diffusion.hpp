#pragma once

#include <string>
#include <vector>

#include "fracfisher/information.hpp"

namespace fracfisher {

/// Fractional heat semigroup: multiplies the spectrum by e^{-|xi|^{2 alpha} t},
/// alpha in (1/2, 1]. Mass is conserved up to the profile's declared tau_mass
/// (exactly 1e-6 for smooth-spectrum inputs).
DensityProfile evolve(const DensityProfile& f, double t, double alpha);

/// Relative entropy report: H_lambda = integral of h(t) = I_{lambda,1+t}(f_t)
/// over [0, t_max] (log-spaced nodes) plus an integrable tail bound.
struct EntropyReport {
    double lambda = 0.0;
    double value = 0.0;        // quadrature + tail_bound
    double t_max = 0.0;
    int nodes = 0;
    double tail_bound = 0.0;   // lambda/(2-lambda) * (1+t_max)^{-(2-lambda)/lambda} * I(f)
    double fisher_at_zero = 0.0;
    std::vector<double> ts;    // integrand trace nodes
    std::vector<double> hs;    // integrand values h(t)

    std::string to_json() const;
    std::string trace_csv() const;  // columns t, h
};

/// Computes the fractional relative entropy of f along the heat semigroup of
/// order 2*alpha = lambda. Node t = 0 contributes I_lambda(f); the remaining
/// nodes are log-spaced on [1e-3, t_max]. Throws std::runtime_error naming the
/// offending t if an integrand node is non-finite.
EntropyReport relative_entropy_lambda(const DensityProfile& f, StableOrder order,
                                      double t_max = 50.0, int nodes = 64);

/// Both sides of the entropy bound H_lambda(X) <= lambda/(2-lambda) * I_lambda(X).
struct EntropyBound {
    double h = 0.0;
    double bound = 0.0;
    bool ok = false;
};
EntropyBound entropy_bound_check(const DensityProfile& f, StableOrder order);

}  // namespace fracfisher
