#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rgc/complex.hpp"

namespace rgc {

/// Rank over GF(2) by column reduction in the given column order.
std::size_t gf2_rank(const SparseGF2Matrix& m);

/// Betti numbers over GF(2), beta_0..beta_{up_to}.
struct BettiVector {
    std::vector<long long> values;

    long long operator[](std::size_t i) const { return i < values.size() ? values[i] : 0; }
};

/// beta_k = #k-simplices - rank d_k - rank d_{k+1}. Needs the complex built
/// to dimension up_to + 1 unless it is complete.
BettiVector betti_numbers(const GeometricComplex& complex, int up_to);

struct EulerResult {
    std::optional<long long> chi_from_counts;  // unset when the complex is truncated
    std::optional<long long> chi_from_betti;   // unset when too few dimensions were built
    BettiVector betti;

    bool consistent() const {
        return !chi_from_counts || !chi_from_betti || *chi_from_counts == *chi_from_betti;
    }
};

/// Alternating sums of simplex counts and of Betti numbers. On a complete
/// complex every Betti number is used; on a truncated one built to
/// dimension d+1 the sum stops at beta_d.
EulerResult euler_characteristic(const GeometricComplex& complex);

/// Components of the 1-skeleton by union-find.
std::size_t connected_components(const GeometricComplex& complex);

/// Violations of: beta_i = 0 for i > d, beta_d in {0, 1}, and beta_d = 1
/// implying chi = 0. chi is the Betti alternating sum when not given.
std::vector<std::string> check_structural_props(const BettiVector& betti, const TorusSpec& spec,
                                                std::optional<long long> chi = std::nullopt);

nlohmann::json to_json(const EulerResult& result, const std::vector<std::string>& violations);

}  // namespace rgc
