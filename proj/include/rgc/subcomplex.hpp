#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rgc/complex.hpp"
#include "rgc/jintegral.hpp"
#include "rgc/moments.hpp"

namespace rgc {

/// A connected pattern graph on vertices 0..n-1.
struct GammaGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    /// Throws DomainError unless the graph is simple and connected.
    void validate() const;

    static GammaGraph edge();
    static GammaGraph complete(int k);
    static GammaGraph path(int n);
};

/// Number of vertex permutations mapping the edge set onto itself (n <= 10).
std::uint64_t automorphism_count(const GammaGraph& gamma);

struct SubcountResult {
    std::uint64_t g_gamma = 0;
    std::optional<double> standardized;
};

/// Occurrences of gamma in the complex: injective vertex maps sending every
/// edge of gamma to an edge of the complex, divided by the automorphism
/// count. Non-induced; edges use the complex's own threshold.
SubcountResult count_gamma(const GeometricComplex& complex, const GammaGraph& gamma);

/// Same count straight from a configuration and a threshold convention.
std::uint64_t count_gamma(const PointConfiguration& config, const ComplexParams& params, const GammaGraph& gamma);

/// Chaos kernel f_i of G_gamma at the given i fixed points: binom(n, i)
/// lambda^{n-i} times the integral over the other n - i vertices of the
/// normalized edge indicator product. The fixed points take the last i
/// vertices of gamma. Monte Carlo over [0, a)^{(n-i) d}; exact when i = n.
JEstimate kernel_integral_f_i(const GammaGraph& gamma, const ModelParams& params, int i,
                              const std::vector<std::vector<double>>& fixed_points, std::uint64_t samples,
                              const SeedSpec& seed, Convention convention = Convention::SubcomplexEps,
                              int max_total_dim = 12);

GammaGraph gamma_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GammaGraph& g);

}  // namespace rgc
