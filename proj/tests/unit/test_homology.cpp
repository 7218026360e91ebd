#include "doctest.h"

#include <vector>

#include "rgc/complex.hpp"
#include "rgc/homology.hpp"
#include "rgc/point_process.hpp"

#include "../support/oracles.hpp"

using namespace rgc;

namespace {

ComplexParams rips(double eps) {
    ComplexParams p;
    p.epsilon = eps;
    return p;
}

std::vector<long long> betti_of(const PointConfiguration& pts, double eps) {
    const GeometricComplex cx = build_complex(pts, rips(eps), kAllDims, BuildMode::Homology);
    return euler_characteristic(cx).betti.values;
}

}  // namespace

TEST_CASE("GF(2) rank agrees with dense elimination") {
    std::mt19937 gen(77);
    std::bernoulli_distribution bit(0.3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t rows = 1 + t % 13, cols = 1 + (t * 7) % 17;
        SparseGF2Matrix m{rows, std::vector<std::vector<std::uint32_t>>(cols)};
        std::vector<std::vector<bool>> dense(rows, std::vector<bool>(cols));
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t r = 0; r < rows; ++r)
                if (bit(gen)) {
                    m.columns[c].push_back(static_cast<std::uint32_t>(r));
                    dense[r][c] = true;
                }
        CHECK(gf2_rank(m) == oracle::dense_gf2_rank(dense));
    }
}

TEST_CASE("single point, triangle, square") {
    const TorusSpec line{1, 1.0};
    CHECK(betti_of(PointConfiguration(line, {0.3}), 0.1) == std::vector<long long>{1});
    const GeometricComplex filled = build_complex(PointConfiguration(line, {0.3, 0.31, 0.32}), rips(0.1));
    CHECK(*euler_characteristic(filled).chi_from_counts == 1);

    // hollow square: a diamond whose diagonals exceed the threshold
    const TorusSpec plane{2, 1.0};
    const PointConfiguration diamond(plane, {0.5, 0.3, 0.6, 0.4, 0.5, 0.5, 0.4, 0.4});
    const GeometricComplex c3 = build_complex(diamond, rips(0.06), kAllDims, BuildMode::Homology);
    CHECK(c3.N(2) == 4);
    const auto e3 = euler_characteristic(c3);
    CHECK(e3.betti.values == std::vector<long long>{1, 1});
    CHECK(*e3.chi_from_counts == 0);
}

TEST_CASE("ring on the circle and grid on the 2-torus recover the torus") {
    std::vector<double> ring;
    for (int i = 0; i < 10; ++i) ring.push_back(0.1 * i + 0.01);
    const auto b1 = betti_of(PointConfiguration(TorusSpec{1, 1.0}, ring), 0.06);
    CHECK(b1 == std::vector<long long>{1, 1});

    std::vector<double> grid;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            grid.push_back(0.1 * i + 0.01);
            grid.push_back(0.1 * j + 0.02);
        }
    const PointConfiguration g(TorusSpec{2, 1.0}, grid);
    const GeometricComplex cx = build_complex(g, rips(0.06), kAllDims, BuildMode::Homology);
    const EulerResult e = euler_characteristic(cx);
    CHECK(e.betti.values == std::vector<long long>{1, 2, 1, 0});
    CHECK(*e.chi_from_counts == 0);
    CHECK(e.consistent());
    CHECK(check_structural_props(e.betti, TorusSpec{2, 1.0}, e.chi_from_counts).empty());
}

TEST_CASE("Euler-Poincare and components on random complexes") {
    for (int t = 0; t < 30; ++t) {
        const int d = 1 + t % 2;
        const TorusSpec spec{d, 1.0};
        const PointConfiguration pts = sample(ProcessLaw::poisson(d == 1 ? 40 : 120), spec, SeedSpec{12, static_cast<std::uint64_t>(t)});
        const GeometricComplex cx = build_complex(pts, rips(d == 1 ? 0.02 : 0.05), kAllDims, BuildMode::Homology);
        const EulerResult e = euler_characteristic(cx);
        REQUIRE(e.chi_from_counts);
        REQUIRE(e.chi_from_betti);
        CHECK(*e.chi_from_counts == *e.chi_from_betti);
        CHECK(static_cast<long long>(connected_components(cx)) == e.betti[0]);
        CHECK(check_structural_props(e.betti, spec, e.chi_from_counts).empty());
    }
}

TEST_CASE("truncated build still reports low Betti numbers") {
    const TorusSpec spec{2, 1.0};
    const PointConfiguration pts = sample(ProcessLaw::poisson(150), spec, SeedSpec{13, 1});
    const GeometricComplex full = build_complex(pts, rips(0.05), kAllDims, BuildMode::Homology);
    const GeometricComplex part = build_complex(pts, rips(0.05), 3, BuildMode::Homology);
    const BettiVector a = betti_numbers(full, 2), b = betti_numbers(part, 2);
    CHECK(a.values == b.values);
}

TEST_CASE("structural property checks") {
    const TorusSpec spec{2, 1.0};
    CHECK(check_structural_props(BettiVector{{1, 0, 0}}, spec).empty());
    CHECK(check_structural_props(BettiVector{{1, 2, 1}}, spec, 0).empty());
    CHECK(check_structural_props(BettiVector{{1, 0, 2}}, spec).size() == 1);
    CHECK(check_structural_props(BettiVector{{1, 0, 0, 1}}, spec).size() >= 1);
    CHECK(check_structural_props(BettiVector{{1, 2, 1}}, spec, 2).size() == 1);
}
