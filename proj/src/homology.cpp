#include "rgc/homology.hpp"

#include <algorithm>
#include <numeric>

#include "rgc/errors.hpp"

namespace rgc {

namespace {

// a ^= b for sorted index lists.
void add_column(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
    a.swap(scratch);
}

}  // namespace

std::size_t gf2_rank(const SparseGF2Matrix& m) {
    std::vector<std::int64_t> pivot_col(m.rows, -1);
    std::vector<std::vector<std::uint32_t>> reduced;
    std::vector<std::uint32_t> col, scratch;
    for (const auto& original : m.columns) {
        col = original;
        while (!col.empty()) {
            const std::uint32_t low = col.back();
            if (low >= m.rows) throw DomainError("row index out of range");
            const std::int64_t p = pivot_col[low];
            if (p < 0) {
                pivot_col[low] = static_cast<std::int64_t>(reduced.size());
                reduced.push_back(col);
                break;
            }
            add_column(col, reduced[static_cast<std::size_t>(p)], scratch);
        }
    }
    return reduced.size();
}

BettiVector betti_numbers(const GeometricComplex& complex, int up_to) {
    if (up_to < 0) throw DomainError("up_to must be >= 0");
    const int built = complex.max_dim_built();
    if (complex.truncated() && built < up_to + 1)
        throw DomainError("complex built to dimension " + std::to_string(built) + "; Betti number " +
                          std::to_string(up_to) + " needs dimension " + std::to_string(up_to + 1));
    // rank d_k for k = 0..up_to+1; zero outside the built range
    std::vector<std::size_t> rank(static_cast<std::size_t>(up_to) + 2, 0);
    for (int k = 1; k <= up_to + 1 && k <= built; ++k) rank[k] = gf2_rank(boundary_matrix(complex, k).matrix);
    BettiVector out;
    for (int k = 0; k <= up_to; ++k)
        out.values.push_back(static_cast<long long>(complex.simplex_count(k)) - static_cast<long long>(rank[k]) -
                             static_cast<long long>(rank[k + 1]));
    return out;
}

EulerResult euler_characteristic(const GeometricComplex& complex) {
    EulerResult r;
    const int built = complex.max_dim_built();
    auto alternating = [](const auto& values) {
        long long chi = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            chi += (i % 2 ? -1 : 1) * static_cast<long long>(values[i]);
        return chi;
    };
    if (!complex.truncated()) {
        r.chi_from_counts = alternating(complex.counts());
        r.betti = betti_numbers(complex, std::max(built, 0));
        r.chi_from_betti = alternating(r.betti.values);
    } else {
        const int d = complex.vertices().spec().d;
        if (built >= d + 1) {
            r.betti = betti_numbers(complex, d);
            r.chi_from_betti = alternating(r.betti.values);
        }
    }
    return r;
}

std::size_t connected_components(const GeometricComplex& complex) {
    const std::size_t n = complex.simplex_count(0);
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::size_t components = n;
    for (std::size_t e = 0; e < complex.simplex_count(1); ++e) {
        const auto s = complex.simplex(1, e);
        const auto ru = find(s[0]), rv = find(s[1]);
        if (ru != rv) {
            parent[std::max(ru, rv)] = std::min(ru, rv);
            --components;
        }
    }
    return components;
}

std::vector<std::string> check_structural_props(const BettiVector& betti, const TorusSpec& spec,
                                                std::optional<long long> chi) {
    std::vector<std::string> violations;
    const auto d = static_cast<std::size_t>(spec.d);
    for (std::size_t i = d + 1; i < betti.values.size(); ++i)
        if (betti.values[i] != 0)
            violations.push_back("beta_" + std::to_string(i) + " = " + std::to_string(betti.values[i]) +
                                 " is nonzero above the torus dimension");
    const long long top = betti[d];
    if (top != 0 && top != 1) violations.push_back("beta_d not in {0,1}: beta_" + std::to_string(d) + " = " +
                                                   std::to_string(top));
    if (!chi) {
        long long sum = 0;
        for (std::size_t i = 0; i < betti.values.size(); ++i) sum += (i % 2 ? -1 : 1) * betti.values[i];
        chi = sum;
    }
    if (top == 1 && *chi != 0)
        violations.push_back("beta_d = 1 but chi = " + std::to_string(*chi) + " (expected 0)");
    return violations;
}

nlohmann::json to_json(const EulerResult& result, const std::vector<std::string>& violations) {
    nlohmann::json j;
    j["betti"] = result.betti.values;
    j["chi_counts"] = result.chi_from_counts ? nlohmann::json(*result.chi_from_counts) : nlohmann::json(nullptr);
    j["chi_betti"] = result.chi_from_betti ? nlohmann::json(*result.chi_from_betti) : nlohmann::json(nullptr);
    j["violations"] = violations;
    return j;
}

}  // namespace rgc
