#include "rgc/complex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "rgc/errors.hpp"

namespace rgc {

std::string to_string(Convention c) {
    switch (c) {
        case Convention::RipsHalfOpen2Eps: return "rips";
        case Convention::SubcomplexEps: return "subcomplex";
        case Convention::CechHalfOpenEps: return "cech";
    }
    return "rips";
}

Convention convention_from_string(const std::string& s) {
    if (s == "rips") return Convention::RipsHalfOpen2Eps;
    if (s == "subcomplex") return Convention::SubcomplexEps;
    if (s == "cech") return Convention::CechHalfOpenEps;
    throw DomainError("unknown convention '" + s + "' (expected rips, subcomplex or cech)");
}

std::vector<std::string> ComplexParams::validate(const TorusSpec& spec, BuildMode mode) const {
    spec.validate();
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be > 0");
    if (convention == Convention::CechHalfOpenEps && metric != Metric::MaxNorm)
        throw DomainError("the cech convention is defined for the max norm only");
    std::vector<std::string> warnings;
    if (epsilon >= spec.a / 4.0) {
        if (mode == BuildMode::Homology)
            throw DomainError("epsilon must be < a/4 for homology computations");
        warnings.push_back("epsilon >= a/4: the complex need not have the homotopy type of the union of balls");
    }
    return warnings;
}

double ComplexParams::pair_radius() const {
    return convention == Convention::SubcomplexEps ? epsilon : 2.0 * epsilon;
}

bool ComplexParams::pair_passes(double distance) const {
    return convention == Convention::SubcomplexEps ? distance <= epsilon : distance < 2.0 * epsilon;
}

std::size_t ThresholdGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& h : higher) total += h.size();
    return total;
}

bool ThresholdGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    const auto& h = higher[u];
    return std::binary_search(h.begin(), h.end(), v);
}

namespace {

bool within(const PointConfiguration& config, const ComplexParams& params, std::size_t i, std::size_t j) {
    return params.pair_passes(torus_distance(config.point(i), config.point(j), config.spec(), params.metric));
}

}  // namespace

ThresholdGraph build_threshold_graph(const PointConfiguration& config, const ComplexParams& params) {
    const auto& spec = config.spec();
    const std::size_t n = config.size();
    ThresholdGraph g;
    g.higher.resize(n);
    if (n < 2) return g;

    const double r = params.pair_radius();
    const auto per_axis = static_cast<long long>(std::floor(spec.a / r));
    double total_cells = std::pow(static_cast<double>(per_axis), spec.d);
    if (per_axis < 3 || spec.d > 6 || total_cells > 4.0 * static_cast<double>(n) + 64.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (within(config, params, i, j)) g.higher[i].push_back(static_cast<std::uint32_t>(j));
        return g;
    }

    // Cells have side a/per_axis >= r, so neighbours lie in adjacent cells.
    const int d = spec.d;
    const double cell = spec.a / static_cast<double>(per_axis);
    auto cell_coord = [&](double x) {
        auto c = static_cast<long long>(x / cell);
        return std::min(c, per_axis - 1);
    };
    const auto cells = static_cast<std::size_t>(total_cells);
    std::vector<std::vector<std::uint32_t>> bucket(cells);
    std::vector<std::size_t> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t id = 0;
        for (int c = d - 1; c >= 0; --c) id = id * per_axis + cell_coord(config.point(i)[c]);
        cell_of[i] = id;
        bucket[id].push_back(static_cast<std::uint32_t>(i));
    }

    std::size_t offsets = 1;
    for (int c = 0; c < d; ++c) offsets *= 3;
    std::vector<long long> coord(d);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t id = cell_of[i];
        for (int c = 0; c < d; ++c) {
            coord[c] = static_cast<long long>(id % per_axis);
            id /= per_axis;
        }
        auto& out = g.higher[i];
        for (std::size_t o = 0; o < offsets; ++o) {
            std::size_t rem = o, nid = 0, mult = 1;
            for (int c = 0; c < d; ++c) {
                const long long shift = static_cast<long long>(rem % 3) - 1;
                rem /= 3;
                nid += mult * static_cast<std::size_t>((coord[c] + shift + per_axis) % per_axis);
                mult *= per_axis;
            }
            for (std::uint32_t j : bucket[nid])
                if (j > i && within(config, params, i, j)) out.push_back(j);
        }
        std::sort(out.begin(), out.end());
    }
    return g;
}

namespace {

// Decides whether a simplex `base` (already valid) extended by w is valid,
// given that w is adjacent to every vertex of base.
class SimplexTest {
public:
    SimplexTest(const PointConfiguration& config, const ComplexParams& params)
        : config_(config), cech_(params.convention == Convention::CechHalfOpenEps), two_eps_(2.0 * params.epsilon) {}

    bool accepts(std::span<const std::uint32_t> base, std::uint32_t w) const {
        if (!cech_ || base.size() < 2) return true;
        const auto& spec = config_.spec();
        std::vector<double> xs(base.size() + 1);
        for (int c = 0; c < spec.d; ++c) {
            for (std::size_t m = 0; m < base.size(); ++m) xs[m] = config_.point(base[m])[c];
            xs.back() = config_.point(w)[c];
            if (!(circular_spread(xs, spec.a) < two_eps_)) return false;
        }
        return true;
    }

private:
    const PointConfiguration& config_;
    bool cech_;
    double two_eps_;
};

// Vertices w > last(base) adjacent to all of base and accepted by the test.
void extensions(const ThresholdGraph& g, const SimplexTest& test, std::span<const std::uint32_t> base,
                std::vector<std::uint32_t>& out) {
    out.clear();
    for (std::uint32_t w : g.higher[base.back()]) {
        bool ok = true;
        for (std::size_t m = 0; m + 1 < base.size() && ok; ++m) ok = g.adjacent(base[m], w);
        if (ok && test.accepts(base, w)) out.push_back(w);
    }
}

}  // namespace

std::size_t GeometricComplex::simplex_count(int dim) const {
    if (dim < 0 || dim > max_dim_built()) return 0;
    return simplices_[dim].size() / static_cast<std::size_t>(dim + 1);
}

std::vector<std::size_t> GeometricComplex::counts() const {
    std::vector<std::size_t> out;
    for (int j = 0; j <= max_dim_built(); ++j) out.push_back(simplex_count(j));
    return out;
}

std::span<const std::uint32_t> GeometricComplex::simplex(int dim, std::size_t idx) const {
    if (dim < 0 || dim > max_dim_built()) throw DomainError("simplex dimension out of range");
    const auto width = static_cast<std::size_t>(dim + 1);
    if (idx >= simplices_[dim].size() / width) throw DomainError("simplex index out of range");
    return {simplices_[dim].data() + idx * width, width};
}

std::size_t GeometricComplex::index_of(std::span<const std::uint32_t> vertices) const {
    const int dim = static_cast<int>(vertices.size()) - 1;
    if (dim < 0 || dim > max_dim_built()) return npos;
    const auto width = vertices.size();
    const auto& flat = simplices_[dim];
    std::size_t lo = 0, hi = flat.size() / width;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto* s = flat.data() + mid * width;
        if (std::lexicographical_compare(s, s + width, vertices.begin(), vertices.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < flat.size() / width && std::equal(vertices.begin(), vertices.end(), flat.data() + lo * width))
        return lo;
    return npos;
}

GeometricComplex build_complex(const PointConfiguration& config, const ComplexParams& params, int max_dim,
                               BuildMode mode) {
    if (max_dim < 0) throw DomainError("max_dim must be >= 0");
    GeometricComplex cx;
    cx.warnings_ = params.validate(config.spec(), mode);
    cx.params_ = params;
    cx.vertices_ = config;

    const std::size_t n = config.size();
    if (n > params.simplex_cap)
        throw ResourceLimitError("simplex cap exceeded while enumerating vertices", -1);
    std::size_t stored = n;
    cx.simplices_.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) cx.simplices_[0][i] = static_cast<std::uint32_t>(i);
    if (n == 0) return cx;

    const ThresholdGraph g = build_threshold_graph(config, params);
    const SimplexTest test(config, params);
    std::vector<std::uint32_t> ext;
    std::vector<std::uint32_t> next;

    // Level-wise extension keeps every dimension in lexicographic order.
    for (int dim = 0; dim < max_dim; ++dim) {
        const auto& level = cx.simplices_[dim];
        const auto width = static_cast<std::size_t>(dim + 1);
        next.clear();
        for (std::size_t s = 0; s < level.size(); s += width) {
            std::span<const std::uint32_t> base(level.data() + s, width);
            extensions(g, test, base, ext);
            stored += ext.size();
            if (stored > params.simplex_cap)
                throw ResourceLimitError("simplex cap of " + std::to_string(params.simplex_cap) +
                                             " exceeded while enumerating dimension " + std::to_string(dim + 1),
                                         dim);
            for (std::uint32_t w : ext) {
                next.insert(next.end(), base.begin(), base.end());
                next.push_back(w);
            }
        }
        if (next.empty()) return cx;
        cx.simplices_.push_back(next);
    }

    const auto& top = cx.simplices_.back();
    const auto width = static_cast<std::size_t>(cx.max_dim_built() + 1);
    for (std::size_t s = 0; s < top.size() && !cx.truncated_; s += width) {
        extensions(g, test, std::span<const std::uint32_t>(top.data() + s, width), ext);
        cx.truncated_ = !ext.empty();
    }
    return cx;
}

std::vector<std::uint64_t> simplex_counts(const PointConfiguration& config, const ComplexParams& params,
                                          int max_dim) {
    if (max_dim < 0) throw DomainError("max_dim must be >= 0");
    params.validate(config.spec(), BuildMode::Counting);
    const std::size_t n = config.size();
    const bool all = max_dim == kAllDims;
    std::vector<std::uint64_t> counts(all ? 1 : static_cast<std::size_t>(max_dim) + 1, 0);
    counts[0] = n;
    if (n == 0 || max_dim == 0) return counts;

    const ThresholdGraph g = build_threshold_graph(config, params);
    const SimplexTest test(config, params);
    const bool flag = params.convention != Convention::CechHalfOpenEps;
    std::uint64_t total = n;
    std::vector<std::uint32_t> clique;

    // Depth-first: candidates are the common higher neighbours of the clique.
    std::function<void(const std::vector<std::uint32_t>&)> extend = [&](const std::vector<std::uint32_t>& cand) {
        const std::size_t dim = clique.size();
        if (counts.size() <= dim) counts.resize(dim + 1, 0);
        counts[dim] += cand.size();
        total += cand.size();
        if (total > params.simplex_cap)
            throw ResourceLimitError("simplex cap of " + std::to_string(params.simplex_cap) + " exceeded", -1);
        if (!all && static_cast<int>(dim) >= max_dim) return;
        std::vector<std::uint32_t> sub;
        for (std::size_t idx = 0; idx < cand.size(); ++idx) {
            const std::uint32_t c = cand[idx];
            clique.push_back(c);
            sub.clear();
            const auto& hc = g.higher[c];
            auto it = hc.begin();
            for (std::size_t m = idx + 1; m < cand.size(); ++m) {
                it = std::lower_bound(it, hc.end(), cand[m]);
                if (it == hc.end()) break;
                if (*it == cand[m] && (flag || test.accepts(clique, cand[m]))) sub.push_back(cand[m]);
            }
            if (!sub.empty()) extend(sub);
            clique.pop_back();
        }
    };
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.higher[v].empty()) continue;
        clique.assign(1, v);
        extend(g.higher[v]);
    }
    if (all)
        while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
    return counts;
}

bool phi_k(std::span<const std::span<const double>> points, const TorusSpec& spec, const ComplexParams& params) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (!params.pair_passes(torus_distance(points[i], points[j], spec, params.metric))) return false;
    if (params.convention == Convention::CechHalfOpenEps && points.size() > 2) {
        std::vector<double> xs(points.size());
        for (int c = 0; c < spec.d; ++c) {
            for (std::size_t m = 0; m < points.size(); ++m) xs[m] = points[m][c];
            if (!(circular_spread(xs, spec.a) < 2.0 * params.epsilon)) return false;
        }
    }
    return true;
}

BoundaryMatrix boundary_matrix(const GeometricComplex& complex, int k) {
    if (k < 1 || k > complex.max_dim_built())
        throw DomainError("boundary dimension " + std::to_string(k) + " outside [1, " +
                          std::to_string(complex.max_dim_built()) + "]");
    BoundaryMatrix bm;
    bm.k = k;
    bm.matrix.rows = complex.simplex_count(k - 1);
    const std::size_t cols = complex.simplex_count(k);
    bm.matrix.columns.resize(cols);
    std::vector<std::uint32_t> face(static_cast<std::size_t>(k));
    for (std::size_t c = 0; c < cols; ++c) {
        const auto s = complex.simplex(k, c);
        auto& col = bm.matrix.columns[c];
        col.reserve(s.size());
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::size_t f = 0;
            for (std::size_t m = 0; m < s.size(); ++m)
                if (m != drop) face[f++] = s[m];
            const std::size_t row = complex.index_of(face);
            if (row == GeometricComplex::npos) throw DomainError("complex is not closed under faces");
            col.push_back(static_cast<std::uint32_t>(row));
        }
        std::sort(col.begin(), col.end());
    }
    return bm;
}

SparseGF2Matrix multiply(const SparseGF2Matrix& lhs, const SparseGF2Matrix& rhs) {
    if (lhs.cols() != rhs.rows) throw DomainError("matrix dimensions do not agree");
    SparseGF2Matrix out;
    out.rows = lhs.rows;
    out.columns.resize(rhs.cols());
    std::vector<std::uint8_t> acc(lhs.rows, 0);
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        std::vector<std::uint32_t> touched;
        for (std::uint32_t mid : rhs.columns[c])
            for (std::uint32_t r : lhs.columns[mid]) {
                if (!acc[r]) touched.push_back(r);
                acc[r] ^= 1;
            }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::uint32_t r : touched) {
            if (acc[r]) out.columns[c].push_back(r);
            acc[r] = 0;
        }
    }
    return out;
}

nlohmann::json summary_json(const GeometricComplex& complex) {
    return {{"N", complex.counts()}, {"max_dim_built", complex.max_dim_built()}, {"truncated", complex.truncated()}};
}

}  // namespace rgc
