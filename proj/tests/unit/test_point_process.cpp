#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "rgc/errors.hpp"
#include "rgc/point_process.hpp"
#include "rgc/rng.hpp"
#include "rgc/stats.hpp"

#include "../support/oracles.hpp"

using namespace rgc;

TEST_CASE("poisson variates follow the pmf") {
    for (double mean : {0.7, 4.0, 25.0, 80.0}) {
        Engine eng = make_engine({3, static_cast<std::uint64_t>(mean * 10)});
        const int n = 40000;
        std::vector<double> xs(n);
        for (double& x : xs) x = static_cast<double>(poisson_variate(eng, mean));
        const Estimate m = mean_estimate(xs);
        CHECK(std::fabs(m.estimate - mean) < 4 * std::sqrt(mean / n));
        // chi-square against the pmf over cells with expected count >= 20
        std::vector<int> counts(static_cast<int>(mean * 4 + 40), 0);
        for (double x : xs)
            if (x < counts.size()) ++counts[static_cast<int>(x)];
        double chi2 = 0.0;
        int cells = 0;
        for (std::size_t j = 0; j < counts.size(); ++j) {
            const double expect = n * oracle::poisson_pmf(mean, static_cast<int>(j));
            if (expect < 20) continue;
            chi2 += (counts[j] - expect) * (counts[j] - expect) / expect;
            ++cells;
        }
        // loose upper quantile of chi-square with `cells` degrees of freedom
        CHECK(chi2 < cells + 5 * std::sqrt(2.0 * cells));
    }
}

TEST_CASE("seed streams are reproducible and distinct") {
    Engine a = make_engine({42, 0}), b = make_engine({42, 0}), c = make_engine({42, 1});
    CHECK(a() == b());
    CHECK(a() != c());
    CHECK(hash_combine(1, 2) != hash_combine(2, 1));
    CHECK(hash_string("x") != hash_string("y"));
}

TEST_CASE("configurations wrap coordinates and reject bad input") {
    const TorusSpec spec{2, 1.0};
    const PointConfiguration c(spec, {1.25, -0.5, 0.1, 0.2});
    CHECK(c.size() == 2);
    CHECK(c.point(0)[0] == doctest::Approx(0.25));
    CHECK(c.point(0)[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(PointConfiguration(spec, {0.1, 0.2, 0.1}), DomainError);
    CHECK_THROWS_AS(PointConfiguration(spec, {0.1, 0.2, 0.1, 0.2}), DomainError);
    CHECK_THROWS_AS(PointConfiguration(spec, {NAN, 0.2}), DomainError);
}

TEST_CASE("binomial process has a fixed count") {
    const TorusSpec spec{2, 1.5};
    CHECK(sample(ProcessLaw::binomial(0), spec, SeedSpec{1, 0}).empty());
    const PointConfiguration c = sample(ProcessLaw::binomial(5), spec, SeedSpec{1, 0});
    CHECK(c.size() == 5);
    for (double x : c.coords()) {
        CHECK(x >= 0.0);
        CHECK(x < 1.5);
    }
}

TEST_CASE("sampling is deterministic per seed") {
    const TorusSpec spec{2, 1.0};
    const auto law = ProcessLaw::poisson(40);
    CHECK(sample(law, spec, SeedSpec{9, 3}) == sample(law, spec, SeedSpec{9, 3}));
    CHECK(!(sample(law, spec, SeedSpec{9, 3}) == sample(law, spec, SeedSpec{9, 4})));
}

TEST_CASE("poisson point count has mean lambda a^d") {
    const TorusSpec spec{1, 1.0};
    const int reps = 10000;
    std::vector<double> n(reps), box(reps);
    const ToroidalBox b{{0.9}, {0.25}};
    for (int r = 0; r < reps; ++r) {
        n[r] = static_cast<double>(sample(ProcessLaw::poisson(50), spec, SeedSpec{17, static_cast<std::uint64_t>(r)}).size());
        box[r] = static_cast<double>(
            count_in_box(sample(ProcessLaw::poisson(100), spec, SeedSpec{18, static_cast<std::uint64_t>(r)}), b));
    }
    CHECK(std::fabs(mean_estimate(n).estimate - 50) <= 4 * std::sqrt(50.0 / reps));
    const Estimate mb = mean_estimate(box);
    CHECK(std::fabs(mb.estimate - 25) <= 4 * mb.std_error);
}

TEST_CASE("box counts") {
    const TorusSpec spec{2, 1.0};
    const PointConfiguration empty(spec);
    CHECK(count_in_box(empty, {{0.0, 0.0}, {0.5, 0.5}}) == 0);
    const PointConfiguration c = sample(ProcessLaw::poisson(30), spec, SeedSpec{2, 2});
    CHECK(count_in_box(c, {{0.3, 0.7}, {1.0, 1.0}}) == c.size());
    const PointConfiguration w(spec, {0.95, 0.5, 0.05, 0.5, 0.5, 0.5});
    CHECK(count_in_box(w, {{0.9, 0.4}, {0.2, 0.2}}) == 2);
}

TEST_CASE("json round trip is exact") {
    const TorusSpec spec{3, 1.7};
    const PointConfiguration c = sample(ProcessLaw::poisson(20), spec, SeedSpec{4, 4});
    CHECK(configuration_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
}
