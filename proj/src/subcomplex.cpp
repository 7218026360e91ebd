#include "rgc/subcomplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "rgc/errors.hpp"

namespace rgc {

void GammaGraph::validate() const {
    if (n < 1) throw DomainError("pattern graph needs at least one vertex");
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("edge endpoint out of range");
        if (u == v) throw DomainError("pattern graph has a loop");
        if (seen[u][v]) throw DomainError("pattern graph has a repeated edge");
        seen[u][v] = seen[v][u] = true;
        parent[find(u)] = find(v);
    }
    for (int v = 1; v < n; ++v)
        if (find(v) != find(0)) throw DomainError("pattern graph must be connected");
}

GammaGraph GammaGraph::edge() { return {2, {{0, 1}}}; }

GammaGraph GammaGraph::complete(int k) {
    GammaGraph g{k, {}};
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) g.edges.emplace_back(u, v);
    return g;
}

GammaGraph GammaGraph::path(int n) {
    GammaGraph g{n, {}};
    for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

namespace {

std::vector<std::vector<bool>> adjacency(const GammaGraph& g) {
    std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
    for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = true;
    return adj;
}

// Vertex order in which every vertex after the first has an earlier
// neighbour, with that neighbour recorded.
std::pair<std::vector<int>, std::vector<int>> bfs_order(const GammaGraph& g) {
    const auto adj = adjacency(g);
    std::vector<int> order{0}, anchor(g.n, -1);
    std::vector<bool> seen(g.n, false);
    seen[0] = true;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (int w = 0; w < g.n; ++w)
            if (adj[order[h]][w] && !seen[w]) {
                seen[w] = true;
                anchor[w] = order[h];
                order.push_back(w);
            }
    return {order, anchor};
}

std::uint64_t labelled_embeddings(const ThresholdGraph& tg, const GammaGraph& gamma) {
    const std::size_t N = tg.vertex_count();
    if (static_cast<std::size_t>(gamma.n) > N) return 0;
    std::vector<std::vector<std::uint32_t>> nbr(N);
    for (std::uint32_t u = 0; u < N; ++u)
        for (std::uint32_t v : tg.higher[u]) {
            nbr[u].push_back(v);
            nbr[v].push_back(u);
        }
    const auto adj = adjacency(gamma);
    const auto [order, anchor] = bfs_order(gamma);
    std::vector<std::uint32_t> image(gamma.n);
    std::vector<bool> used(N, false);
    std::uint64_t count = 0;

    std::function<void(std::size_t)> place = [&](std::size_t pos) {
        if (pos == order.size()) {
            ++count;
            return;
        }
        const int gv = order[pos];
        for (std::uint32_t c : nbr[image[anchor[gv]]]) {
            if (used[c]) continue;
            bool ok = true;
            for (std::size_t q = 0; q < pos && ok; ++q) {
                const int gu = order[q];
                if (gu != anchor[gv] && adj[gv][gu]) ok = tg.adjacent(c, image[gu]);
            }
            if (!ok) continue;
            used[c] = true;
            image[gv] = c;
            place(pos + 1);
            used[c] = false;
        }
    };
    for (std::uint32_t v = 0; v < N; ++v) {
        image[order[0]] = v;
        used[v] = true;
        place(1);
        used[v] = false;
    }
    return count;
}

}  // namespace

std::uint64_t automorphism_count(const GammaGraph& gamma) {
    gamma.validate();
    if (gamma.n > 10) throw DomainError("automorphism scan is limited to n <= 10");
    const auto adj = adjacency(gamma);
    std::vector<int> perm(gamma.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (auto [u, v] : gamma.edges)
            if (!adj[perm[u]][perm[v]]) {
                ok = false;
                break;
            }
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

std::uint64_t count_gamma(const PointConfiguration& config, const ComplexParams& params, const GammaGraph& gamma) {
    gamma.validate();
    const std::uint64_t c = automorphism_count(gamma);
    const std::uint64_t labelled = labelled_embeddings(build_threshold_graph(config, params), gamma);
    if (labelled % c != 0) throw DomainError("labelled embedding count not divisible by the automorphism count");
    return labelled / c;
}

SubcountResult count_gamma(const GeometricComplex& complex, const GammaGraph& gamma) {
    return {count_gamma(complex.vertices(), complex.params(), gamma), std::nullopt};
}

JEstimate kernel_integral_f_i(const GammaGraph& gamma, const ModelParams& params, int i,
                              const std::vector<std::vector<double>>& fixed_points, std::uint64_t samples,
                              const SeedSpec& seed, Convention convention, int max_total_dim) {
    gamma.validate();
    params.validate();
    const int n = gamma.n, d = params.spec.d;
    if (i < 0 || i > n) throw DomainError("kernel index i must lie in [0, n]");
    if (static_cast<int>(fixed_points.size()) != i) throw DomainError("kernel f_i takes exactly i fixed points");
    const int free_count = n - i;
    if (free_count * d > max_total_dim)
        throw DomainError("integral dimension " + std::to_string(free_count * d) + " exceeds the cap of " +
                          std::to_string(max_total_dim));
    ComplexParams cp;
    cp.epsilon = params.epsilon;
    cp.convention = convention;
    const double a = params.spec.a;
    std::vector<double> x(static_cast<std::size_t>(n) * d);
    for (int f = 0; f < i; ++f) {
        if (static_cast<int>(fixed_points[f].size()) != d) throw DomainError("fixed point dimension mismatch");
        for (int c = 0; c < d; ++c) x[(free_count + f) * d + c] = wrap_coordinate(fixed_points[f][c], a);
    }
    auto indicator = [&]() {
        for (auto [u, v] : gamma.edges) {
            const std::span<const double> p(x.data() + u * d, d), q(x.data() + v * d, d);
            if (!cp.pair_passes(torus_distance(p, q, params.spec))) return false;
        }
        return true;
    };
    const double scale = binomial(n, i).convert_to<double>() * std::pow(params.lambda, free_count) /
                         static_cast<double>(automorphism_count(gamma));
    if (free_count == 0) return {scale * (indicator() ? 1.0 : 0.0), 0.0};
    if (samples < 2) throw DomainError("need at least 2 samples");
    Engine eng = make_engine(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (int c = 0; c < free_count * d; ++c) x[c] = uniform01(eng) * a;
        hits += indicator();
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double vol = std::pow(a, free_count * d);
    return {scale * vol * p, scale * vol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

GammaGraph gamma_from_json(const nlohmann::json& j) {
    GammaGraph g;
    g.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw DomainError("edges are pairs of vertex indices");
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    g.validate();
    return g;
}

nlohmann::json to_json(const GammaGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    return {{"n", g.n}, {"edges", edges}};
}

}  // namespace rgc
