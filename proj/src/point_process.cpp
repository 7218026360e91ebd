#include "rgc/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rgc/errors.hpp"

namespace rgc {

PointConfiguration::PointConfiguration(TorusSpec spec) : spec_(spec) { spec_.validate(); }

PointConfiguration::PointConfiguration(TorusSpec spec, std::vector<double> flat_coords)
    : spec_(spec), coords_(std::move(flat_coords)) {
    spec_.validate();
    if (coords_.size() % spec_.d != 0)
        throw DomainError("coordinate count is not a multiple of the dimension");
    for (double& x : coords_) {
        if (!std::isfinite(x)) throw DomainError("non-finite coordinate");
        x = wrap_coordinate(x, spec_.a);
    }
    const std::size_t n = size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t i, std::size_t j) {
        auto p = point(i), q = point(j);
        return std::lexicographical_compare(p.begin(), p.end(), q.begin(), q.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 1; i < n; ++i) {
        auto p = point(order[i - 1]), q = point(order[i]);
        if (std::equal(p.begin(), p.end(), q.begin()))
            throw DomainError("configuration is not simple: duplicate point");
    }
}

void PointConfiguration::push_back(std::span<const double> p) {
    if (p.size() != static_cast<std::size_t>(spec_.d)) throw DomainError("point dimension mismatch");
    for (double x : p) coords_.push_back(wrap_coordinate(x, spec_.a));
}

ProcessLaw ProcessLaw::poisson(double lambda) {
    ProcessLaw law;
    law.kind = Kind::Poisson;
    law.intensity = lambda;
    law.validate();
    return law;
}

ProcessLaw ProcessLaw::binomial(std::uint64_t n) {
    ProcessLaw law;
    law.kind = Kind::Binomial;
    law.n = n;
    return law;
}

void ProcessLaw::validate() const {
    if (kind == Kind::Poisson && (!(intensity > 0.0) || !std::isfinite(intensity)))
        throw DomainError("Poisson intensity must be > 0");
}

namespace {

// Redraw any point that bitwise-duplicates an earlier one. Happens with
// probability zero in exact arithmetic, so this never biases the law.
void resample_duplicates(std::vector<double>& coords, int d, double a, Engine& eng) {
    const std::size_t n = coords.size() / d;
    for (;;) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto pt = [&](std::size_t i) { return coords.begin() + static_cast<std::ptrdiff_t>(i * d); };
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            return std::lexicographical_compare(pt(i), pt(i) + d, pt(j), pt(j) + d);
        });
        bool clean = true;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::equal(pt(order[i - 1]), pt(order[i - 1]) + d, pt(order[i]))) {
                for (int c = 0; c < d; ++c) *(pt(order[i]) + c) = uniform01(eng) * a;
                clean = false;
            }
        }
        if (clean) return;
    }
}

}  // namespace

PointConfiguration sample(const ProcessLaw& law, const TorusSpec& spec, Engine& eng) {
    spec.validate();
    law.validate();
    std::uint64_t count = law.n;
    if (law.kind == ProcessLaw::Kind::Poisson) count = poisson_variate(eng, law.intensity * spec.volume());
    std::vector<double> coords(count * static_cast<std::uint64_t>(spec.d));
    for (double& x : coords) {
        x = uniform01(eng) * spec.a;
        if (x >= spec.a) x = 0.0;
    }
    resample_duplicates(coords, spec.d, spec.a, eng);
    PointConfiguration config(spec);
    for (std::size_t i = 0; i < count; ++i)
        config.push_back(std::span<const double>(coords.data() + i * spec.d, spec.d));
    return config;
}

PointConfiguration sample(const ProcessLaw& law, const TorusSpec& spec, const SeedSpec& seed) {
    Engine eng = make_engine(seed);
    return sample(law, spec, eng);
}

std::size_t count_in_box(const PointConfiguration& config, const ToroidalBox& box) {
    const auto& spec = config.spec();
    if (box.lower.size() != static_cast<std::size_t>(spec.d) || box.sides.size() != box.lower.size())
        throw DomainError("box dimension does not match torus dimension");
    for (double s : box.sides)
        if (!(s > 0.0 && s <= spec.a)) throw DomainError("box side lengths must lie in (0, a]");
    std::size_t count = 0;
    for (std::size_t i = 0; i < config.size(); ++i) {
        auto p = config.point(i);
        bool inside = true;
        for (int c = 0; c < spec.d && inside; ++c) {
            if (box.sides[c] >= spec.a) continue;
            inside = wrap_coordinate(p[c] - box.lower[c], spec.a) < box.sides[c];
        }
        count += inside;
    }
    return count;
}

nlohmann::json to_json(const PointConfiguration& config) {
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < config.size(); ++i) {
        auto p = config.point(i);
        pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return {{"d", config.spec().d}, {"a", config.spec().a}, {"points", pts}};
}

PointConfiguration configuration_from_json(const nlohmann::json& j) {
    TorusSpec spec{j.at("d").get<int>(), j.at("a").get<double>()};
    spec.validate();
    std::vector<double> flat;
    for (const auto& p : j.at("points")) {
        if (!p.is_array() || p.size() != static_cast<std::size_t>(spec.d))
            throw DomainError("point does not have d coordinates");
        for (const auto& x : p) flat.push_back(x.get<double>());
    }
    return PointConfiguration(spec, std::move(flat));
}

}  // namespace rgc
