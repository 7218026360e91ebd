#include "rgc/jintegral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "rgc/errors.hpp"
#include "rgc/moments.hpp"

namespace rgc {

OverlapPattern::OverlapPattern(int n, std::vector<std::uint32_t> masks)
    : simplices(n), vertex_masks(std::move(masks)) {
    if (n < 1 || n > 32) throw DomainError("an overlap pattern needs between 1 and 32 simplices");
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
    for (auto m : vertex_masks)
        if (m == 0 || (m & ~all)) throw DomainError("vertex mask outside the simplex range");
    std::sort(vertex_masks.begin(), vertex_masks.end());
    for (int s : simplex_sizes())
        if (s == 0) throw DomainError("every simplex needs at least one vertex");
}

OverlapPattern OverlapPattern::two(int m1, int m2, int m12) {
    if (m1 < 0 || m2 < 0 || m12 < 0) throw DomainError("vertex counts must be nonnegative");
    std::vector<std::uint32_t> masks;
    masks.insert(masks.end(), m1, 1u);
    masks.insert(masks.end(), m2, 2u);
    masks.insert(masks.end(), m12, 3u);
    return OverlapPattern(2, std::move(masks));
}

OverlapPattern OverlapPattern::single(int k) {
    if (k < 1) throw DomainError("a simplex needs at least one vertex");
    return OverlapPattern(1, std::vector<std::uint32_t>(k, 1u));
}

OverlapPattern OverlapPattern::three(int k, int t3, int p12, int p13, int p23) {
    const int own1 = k - t3 - p12 - p13, own2 = k - t3 - p12 - p23, own3 = k - t3 - p13 - p23;
    if (t3 < 0 || p12 < 0 || p13 < 0 || p23 < 0 || own1 < 0 || own2 < 0 || own3 < 0)
        throw DomainError("inconsistent three-simplex overlap");
    std::vector<std::uint32_t> masks;
    masks.insert(masks.end(), own1, 1u);
    masks.insert(masks.end(), own2, 2u);
    masks.insert(masks.end(), own3, 4u);
    masks.insert(masks.end(), p12, 3u);
    masks.insert(masks.end(), p13, 5u);
    masks.insert(masks.end(), p23, 6u);
    masks.insert(masks.end(), t3, 7u);
    return OverlapPattern(3, std::move(masks));
}

std::vector<int> OverlapPattern::simplex_sizes() const {
    std::vector<int> sizes(simplices, 0);
    for (auto m : vertex_masks)
        for (int s = 0; s < simplices; ++s)
            if (m >> s & 1u) ++sizes[s];
    return sizes;
}

std::vector<OverlapPattern> OverlapPattern::components() const {
    // union-find over simplices joined by shared vertices
    std::vector<int> parent(simplices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto m : vertex_masks) {
        const int first = std::countr_zero(m);
        for (int s = first + 1; s < simplices; ++s)
            if (m >> s & 1u) parent[find(s)] = find(first);
    }
    std::vector<OverlapPattern> out;
    std::vector<int> roots;
    for (int s = 0; s < simplices; ++s)
        if (find(s) == s) roots.push_back(s);
    for (int root : roots) {
        std::vector<int> members;
        for (int s = 0; s < simplices; ++s)
            if (find(s) == root) members.push_back(s);
        std::vector<std::uint32_t> masks;
        for (auto m : vertex_masks) {
            if (!(m >> root & 1u) && find(std::countr_zero(m)) != root) continue;
            std::uint32_t local = 0;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (m >> members[i] & 1u) local |= 1u << i;
            masks.push_back(local);
        }
        out.emplace_back(static_cast<int>(members.size()), std::move(masks));
    }
    return out;
}

std::string OverlapPattern::to_string() const {
    std::string s = std::to_string(simplices) + ":";
    for (std::size_t i = 0; i < vertex_masks.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(vertex_masks[i]);
    }
    return s;
}

namespace {

std::string cache_key(const OverlapPattern& p, const TorusSpec& spec, double eps) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "|%d|%.17g|%.17g", spec.d, spec.a, eps);
    return p.to_string() + buf;
}

}  // namespace

JEstimate j_oracle_mc(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon, std::uint64_t samples,
                      const SeedSpec& seed, int max_total_dim) {
    spec.validate();
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
    const int M = pattern.vertex_count();
    const int d = spec.d;
    if (M * d > max_total_dim)
        throw DomainError("integral dimension " + std::to_string(M * d) + " exceeds the cap of " +
                          std::to_string(max_total_dim));
    if (samples < 100000) throw DomainError("the Monte Carlo integral needs at least 1e5 samples");

    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < M; ++u)
        for (int v = u + 1; v < M; ++v)
            if (pattern.vertex_masks[u] & pattern.vertex_masks[v]) pairs.emplace_back(u, v);

    Engine eng = make_engine(seed);
    const double a = spec.a, thr = 2.0 * epsilon;
    std::vector<double> x(static_cast<std::size_t>(M) * d);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (double& c : x) c = uniform01(eng) * a;
        bool ok = true;
        for (auto [u, v] : pairs) {
            for (int c = 0; c < d && ok; ++c) {
                const double diff = std::fabs(x[u * d + c] - x[v * d + c]);
                ok = std::min(diff, a - diff) < thr;
            }
            if (!ok) break;
        }
        hits += ok;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double volume = std::pow(a, M * d);
    return {volume * p, volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

MonteCarloJOracle::MonteCarloJOracle(std::uint64_t samples, SeedSpec seed, int max_total_dim)
    : samples_(samples), seed_(seed), max_total_dim_(max_total_dim) {}

JEstimate MonteCarloJOracle::integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) {
    const std::string key = cache_key(pattern, spec, epsilon);
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const SeedSpec stream{seed_.master_seed, hash_combine(seed_.stream_index, hash_string(key))};
    const JEstimate est = j_oracle_mc(pattern, spec, epsilon, samples_, stream, max_total_dim_);
    std::lock_guard lock(mu_);
    cache_.emplace(key, est);
    return est;
}

JEstimate ClosedFormJOracle::integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) {
    spec.validate();
    double value = 1.0;
    for (const auto& comp : pattern.components()) {
        const auto sizes = comp.simplex_sizes();
        const std::uint32_t full = (1u << comp.simplices) - 1u;
        const bool stacked = std::all_of(comp.vertex_masks.begin(), comp.vertex_masks.end(),
                                         [&](std::uint32_t m) { return m == full; });
        if (comp.simplices == 1 || stacked) {
            // every simplex spans the same vertices
            const int k = comp.vertex_count();
            value *= std::pow(static_cast<double>(k), spec.d) * spec.volume() *
                     std::pow(2.0 * epsilon, (k - 1) * spec.d);
        } else if (comp.simplices == 2) {
            int m1 = 0, m2 = 0, m12 = 0;
            for (auto m : comp.vertex_masks) (m == 1u ? m1 : m == 2u ? m2 : m12)++;
            value *= j2_closed_form(m1, m2, m12, spec, epsilon);
        } else {
            throw DomainError("no closed form for the overlap pattern " + comp.to_string());
        }
    }
    return {value, 0.0};
}

JEstimate FactorizingJOracle::integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) {
    double value = 1.0, rel_var = 0.0;
    for (const auto& comp : pattern.components()) {
        const JEstimate e = comp.simplices <= 2 ? closed_.integrate(comp, spec, epsilon)
                                                : fallback_.integrate(comp, spec, epsilon);
        value *= e.value;
        if (e.value != 0.0) rel_var += (e.std_error / e.value) * (e.std_error / e.value);
    }
    return {value, std::fabs(value) * std::sqrt(rel_var)};
}

OverlapPattern pattern_from_json(const nlohmann::json& j) {
    if (j.contains("vertex_masks"))
        return OverlapPattern(j.at("simplices").get<int>(), j.at("vertex_masks").get<std::vector<std::uint32_t>>());
    if (j.contains("m12")) return OverlapPattern::two(j.at("m1").get<int>(), j.at("m2").get<int>(), j.at("m12").get<int>());
    if (j.contains("k")) return OverlapPattern::single(j.at("k").get<int>());
    throw DomainError("overlap pattern needs vertex_masks, (m1, m2, m12) or k");
}

nlohmann::json to_json(const OverlapPattern& p) {
    return {{"simplices", p.simplices}, {"vertex_masks", p.vertex_masks}};
}

}  // namespace rgc
