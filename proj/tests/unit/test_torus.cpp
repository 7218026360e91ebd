#include "doctest.h"

#include <cmath>
#include <vector>

#include "rgc/errors.hpp"
#include "rgc/torus.hpp"

#include "../support/oracles.hpp"

using namespace rgc;

TEST_CASE("coordinate distance wraps around") {
    CHECK(toroidal_coordinate_distance(0.1, 0.9, 1.0) == doctest::Approx(0.2));
    CHECK(toroidal_coordinate_distance(0.3, 0.3, 1.0) == 0.0);
    CHECK(toroidal_coordinate_distance(0.0, 0.5, 1.0) == 0.5);
}

TEST_CASE("wrap_coordinate lands in [0, a)") {
    CHECK(wrap_coordinate(1.0, 1.0) == 0.0);
    CHECK(wrap_coordinate(-0.25, 1.0) == doctest::Approx(0.75));
    CHECK(wrap_coordinate(2.5, 2.0) == doctest::Approx(0.5));
    const double tiny = wrap_coordinate(-1e-300, 1.0);
    CHECK(tiny >= 0.0);
    CHECK(tiny < 1.0);
}

TEST_CASE("point distances in both metrics") {
    const TorusSpec spec{2, 1.0};
    const std::vector<double> p{0.1, 0.1}, q{0.9, 0.2}, c{0.5, 0.5};
    CHECK(torus_distance(p, q, spec, Metric::MaxNorm) == doctest::Approx(0.2));
    CHECK(torus_distance(c, c, spec, Metric::MaxNorm) == 0.0);
    CHECK(torus_distance(p, q, spec, Metric::Euclidean) == doctest::Approx(std::sqrt(0.05)));
}

TEST_CASE("distance agrees with the reference on random points") {
    const TorusSpec spec{3, 2.5};
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(0.0, 2.5);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> p{u(gen), u(gen), u(gen)}, q{u(gen), u(gen), u(gen)};
        CHECK(torus_distance(p, q, spec, Metric::MaxNorm) ==
              doctest::Approx(oracle::dist(p.data(), q.data(), 3, 2.5, false)).epsilon(1e-12));
        CHECK(torus_distance(p, q, spec, Metric::Euclidean) ==
              doctest::Approx(oracle::dist(p.data(), q.data(), 3, 2.5, true)).epsilon(1e-12));
    }
}

TEST_CASE("circular spread matches the reference") {
    CHECK(circular_spread({0.95, 0.05}, 1.0) == doctest::Approx(0.1));
    CHECK(circular_spread({0.2}, 1.0) == 0.0);
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> xs(1 + t % 6);
        for (double& x : xs) x = u(gen);
        CHECK(circular_spread(xs, 1.0) == doctest::Approx(oracle::arc_spread(xs, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("invalid tori are rejected") {
    CHECK_THROWS_AS((TorusSpec{0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((TorusSpec{2, 0.0}.validate()), DomainError);
    CHECK_THROWS_AS((TorusSpec{2, -1.0}.validate()), DomainError);
    CHECK(TorusSpec{3, 2.0}.volume() == doctest::Approx(8.0));
    CHECK_THROWS_AS(metric_from_string("taxicab"), DomainError);
}
