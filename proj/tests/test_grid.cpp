#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracfisher/grid.hpp"

using fracfisher::Grid;

TEST_CASE("grid spacing and frequency layout") {
    const Grid g = Grid::make(64, 32.0);
    CHECK(g.size() == 64);
    CHECK(g.dx() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.dxi() == doctest::Approx(std::numbers::pi / 32.0).epsilon(1e-15));
    CHECK(g.band_edge() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(g.center() == 32);
    CHECK(g.x(0) == doctest::Approx(-32.0));
    CHECK(g.x(g.center()) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g.xi(g.center()) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g.x(63) == doctest::Approx(31.0));
    // dx * dxi * n = 2 pi, the exact round-trip condition of the transforms.
    CHECK(g.dx() * g.dxi() * static_cast<double>(g.size()) ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("grid validation rejects bad parameters") {
    CHECK_THROWS_AS(Grid::make(100, 10.0), std::invalid_argument);   // not a power of two
    CHECK_THROWS_AS(Grid::make(32, 10.0), std::invalid_argument);    // too small
    CHECK_THROWS_AS(Grid::make(0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(128, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(128, -5.0), std::invalid_argument);
    CHECK_NOTHROW(Grid::make(64, 1e-3));
}

TEST_CASE("trapezoid quadrature matches closed forms") {
    const Grid g = Grid::make(64, 32.0);
    std::vector<double> ones(g.size(), 1.0);
    // Endpoints are halved, so a constant integrates to 2*x_max - dx.
    CHECK(g.trapezoid(ones) == doctest::Approx(63.0).epsilon(1e-14));

    std::vector<double> linear(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) linear[j] = g.x(j);
    // The grid is asymmetric by one sample; trapezoid of x over [-L, L-dx].
    const double expect = 0.5 * ((32.0 - 1.0) * (32.0 - 1.0) - 32.0 * 32.0);
    CHECK(g.trapezoid(linear) == doctest::Approx(expect).epsilon(1e-12));

    std::vector<double> wrong(10, 0.0);
    CHECK_THROWS_AS(g.trapezoid(wrong), std::invalid_argument);
}

TEST_CASE("grid equality compares size and extent") {
    const Grid a = Grid::make(64, 32.0);
    const Grid b = Grid::make(64, 32.0);
    const Grid c = Grid::make(128, 32.0);
    const Grid d = Grid::make(64, 16.0);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != d);
}
