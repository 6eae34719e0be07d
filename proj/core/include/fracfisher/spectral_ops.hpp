#pragma once

#include <complex>
#include <vector>

#include "fracfisher/profiles.hpp"

namespace fracfisher {

/// Discrete approximation of F(xi) = integral e^{-i xi x} f(x) dx on the
/// frequency grid (trapezoid weights, phase-aligned so the grid center is x=0).
SpectralProfile forward_transform(const RealProfile& f);

/// Inverse of forward_transform. Requires conjugate symmetry of the input
/// within 1e-8 (relative to the peak); throws std::runtime_error otherwise.
RealProfile inverse_transform(const SpectralProfile& F);

/// Normalization constant S(alpha) = [sqrt(pi) Gamma((1-alpha)/2) Gamma(alpha/2)]^-1
/// of the Riesz potential, alpha in (0,1). Satisfies S(alpha) = S(1-alpha).
double riesz_constant(double alpha);

/// Riesz potential: Fourier multiplier |xi|^alpha (0 at xi = 0), alpha in (0,1).
/// Algebraic boundary images of the output are removed by a constrained fit
/// with even exponent family {alpha+1, 2*alpha+2}.
RealProfile riesz_potential(const RealProfile& f, double alpha);

/// Fractional derivative: Fourier multiplier i*sign(xi)*|xi|^alpha (0 at xi = 0),
/// alpha in (0,1). Output boundary images are removed by a constrained fit with
/// odd exponent family {alpha+1, 2*alpha+2}.
RealProfile fractional_derivative(const RealProfile& f, double alpha);

/// Spectral convolution: spectra multiply. Grids must match.
RealProfile convolve(const RealProfile& f, const RealProfile& g);

/// Exact periodization of a closed-form spectrum over the frequency band:
/// fold(xi) = sum_m fn(xi + 2*band_edge*m), evaluated with m_terms explicit
/// pair terms plus an Euler-Maclaurin tail correction whose local decay
/// exponent is measured from the last two pair sums.
std::vector<std::complex<double>> fold_spectrum(const Grid& grid, const SpectrumFn& fn,
                                                int m_terms = 64);

/// Density built from a closed-form spectrum: exact periodization, inverse
/// transform, then the standard density construction with tail exponent
/// family `tail_order`. The descriptor is attached to the result.
DensityProfile density_from_spectrum(const Grid& grid, const SpectrumFn& fn,
                                     double tail_order, double tau_mass = 1e-4);

namespace detail {

/// Shared multiplier machinery: applies `mult` to the spectrum of `f`
/// (descriptor fold when `spectrum` is set, discrete transform otherwise) and
/// inverts. The zero frequency is forced to 0 when `zero_center` is set.
std::vector<double> apply_multiplier(const Grid& grid, const std::vector<double>& samples,
                                     const SpectrumFn& spectrum,
                                     const std::function<std::complex<double>(double)>& mult,
                                     bool zero_center);

/// Removes fitted odd boundary images with exponents {a1, a2} from samples.
/// Returns the fitted leading coefficient through *b1 when non-null.
void deimage_odd(const Grid& grid, std::vector<double>& samples, double a1, double a2,
                 double* b1 = nullptr);
/// Even counterpart of deimage_odd.
void deimage_even(const Grid& grid, std::vector<double>& samples, double a1, double a2,
                  double* b1 = nullptr);

/// Boundary-decay diagnostic used by the multiplier operations: fraction of
/// the peak remaining at the grid boundary.
double boundary_ratio(const std::vector<double>& samples);

}  // namespace detail

}  // namespace fracfisher
