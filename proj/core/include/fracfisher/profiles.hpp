#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fracfisher/grid.hpp"

namespace fracfisher {

/// Closed-form spectrum as a callable xi -> value. Profiles constructed from a
/// known characteristic function carry one of these; combination operations
/// compose them symbolically so that rescaled or convolved spectra are
/// evaluated exactly instead of being interpolated.
using SpectrumFn = std::function<std::complex<double>(double)>;

/// Real-valued samples on the spatial grid.
struct RealProfile {
    Grid grid;
    std::vector<double> samples;
    /// Boundary-tail diagnostic recorded by multiplier operations.
    double truncation_estimate = 0.0;
    /// Set when the input decays too slowly at the grid boundary
    /// (boundary magnitude above 1e-6 of the peak); non-fatal.
    bool boundary_warning = false;
};

/// Complex samples on the frequency grid.
struct SpectralProfile {
    Grid grid;
    std::vector<std::complex<double>> samples;
};

/// Sampled probability density.
///
/// `samples` holds the exact periodization of the density onto
/// [-x_max, x_max): its trapezoid mass equals the periodized spectrum at
/// xi = 0, so mass_deficit reflects genuine spectral leakage and nothing
/// else. `interior` is the same density with the fitted algebraic boundary
/// images subtracted; score and Fisher quadratures consume that view, while
/// mass accounting and serialization use `samples`.
struct DensityProfile {
    Grid grid;
    std::vector<double> samples;
    /// |1 - trapezoid mass of samples|.
    double mass_deficit = 0.0;
    /// Declared tolerance for mass_deficit (default 1e-4; densities whose
    /// spectrum has a cusp at 0 declare a larger, analytically bounded value).
    double tau_mass = 1e-4;
    /// Total negative mass clipped to zero during construction.
    double clipped_mass = 0.0;
    /// Tail exponent family used for the boundary-image fit: the density tail
    /// is modelled as b1*|x|^-(1+tail_order) + b2*|x|^-(1+2*tail_order).
    double tail_order = 2.0;
    /// Fitted leading tail coefficient b1 (0 when not in the algebraic class).
    double tail_coefficient = 0.0;
    /// Image-subtracted view of the density (clipped at 0).
    std::vector<double> interior;
    /// Closed-form spectrum when known; empty otherwise.
    SpectrumFn spectrum_fn;

    bool has_spectrum() const { return static_cast<bool>(spectrum_fn); }

    /// Trapezoid mass of `samples`.
    double mass() const { return grid.trapezoid(samples); }

    RealProfile as_real() const { return RealProfile{grid, samples, 0.0, false}; }
};

/// Builds a DensityProfile from periodized samples: clips negatives (recording
/// the clipped mass), fits the two-term constrained boundary-image model with
/// exponent family `tail_order`, and derives the interior view.
DensityProfile make_density_profile(const Grid& grid, std::vector<double> samples,
                                    double tail_order, SpectrumFn spectrum_fn = {},
                                    double tau_mass = 1e-4);

/// CSV serialization: columns (x, value); first line is a comment recording
/// n_points, x_max and mass_deficit.
std::string to_csv(const RealProfile& p);
std::string to_csv(const DensityProfile& p);
/// CSV serialization: columns (xi, re, im).
std::string to_csv(const SpectralProfile& p);

namespace detail {

/// Periodic image sums of algebraic tails evaluated on the grid:
/// even family  sum_{m>=1} |x + 2Lm|^-q + |x - 2Lm|^-q,
/// odd family   sum_{m>=1} (2Lm + x)^-q - (2Lm - x)^-q,
/// with 8 explicit terms plus the analytic integral tail.
std::vector<double> image_sum_even(const Grid& grid, double q);
std::vector<double> image_sum_odd(const Grid& grid, double q);

/// Constrained two-term tail fit over the window 0.55*x_max <= |x| <= 0.98*x_max.
/// Each basis couples a direct tail with its own images under one coefficient:
/// even:  |x|^-a + image_sum_even(a);   odd:  sign(x)|x|^-a + image_sum_odd(a).
/// Returns the coefficients (b1, b2); {0, 0} when the window content is below
/// `skip_rel` times the profile peak or the normal equations are singular.
struct TailFit {
    double b1 = 0.0;
    double b2 = 0.0;
    bool fitted = false;
};
TailFit fit_tail_even(const Grid& grid, const std::vector<double>& v, double a1, double a2,
                      const std::vector<double>& img1, const std::vector<double>& img2,
                      double skip_rel);
TailFit fit_tail_odd(const Grid& grid, const std::vector<double>& v, double a1, double a2,
                     const std::vector<double>& img1, const std::vector<double>& img2,
                     double skip_rel);

}  // namespace detail

}  // namespace fracfisher
