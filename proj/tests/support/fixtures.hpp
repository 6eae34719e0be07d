#pragma once

// Cached grids and densities shared across test files so expensive
// constructions (reference-resolution profiles) happen once per test run.

#include "fracfisher/fracfisher.hpp"

namespace fixtures {

/// Small grid for fast property tests.
inline const fracfisher::Grid& small_grid() {
    static const fracfisher::Grid g = fracfisher::Grid::make(4096, 60.0);
    return g;
}

/// Mid-size grid with a boundary far enough out for tail-sensitive checks.
inline const fracfisher::Grid& mid_grid() {
    static const fracfisher::Grid g = fracfisher::Grid::make(8192, 80.0);
    return g;
}

/// Full reference grid used by the experiment defaults.
inline const fracfisher::Grid& reference_grid() {
    static const fracfisher::Grid g = fracfisher::Grid::make(65536, 200.0);
    return g;
}

/// Heavy-tailed reference profile reused by several oracle comparisons.
inline const fracfisher::DensityProfile& reference_linnik15() {
    static const fracfisher::DensityProfile p =
        fracfisher::linnik_density(reference_grid(), fracfisher::StableOrder{1.5});
    return p;
}

}  // namespace fixtures
