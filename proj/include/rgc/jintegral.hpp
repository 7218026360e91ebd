#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"

#include "rgc/rng.hpp"
#include "rgc/torus.hpp"

namespace rgc {

/// How n simplices share vertices: one bit mask per distinct vertex, bit m
/// set when the vertex belongs to simplex m. Masks are kept sorted so equal
/// structures compare equal.
struct OverlapPattern {
    int simplices = 0;
    std::vector<std::uint32_t> vertex_masks;

    OverlapPattern() = default;
    OverlapPattern(int simplices, std::vector<std::uint32_t> masks);

    /// Two simplices with m1 and m2 private vertices and m12 shared ones.
    static OverlapPattern two(int m1, int m2, int m12);
    /// One simplex on k vertices.
    static OverlapPattern single(int k);
    /// Three simplices of size k as indexed in the third-moment sum: t3
    /// vertices common to all three, p12/p13/p23 common to one pair.
    static OverlapPattern three(int k, int t3, int p12, int p13, int p23);

    int vertex_count() const noexcept { return static_cast<int>(vertex_masks.size()); }
    std::vector<int> simplex_sizes() const;
    /// Splits into groups of simplices connected through shared vertices.
    std::vector<OverlapPattern> components() const;
    std::string to_string() const;

    auto operator<=>(const OverlapPattern&) const = default;
};

struct JEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Integral over [0, a)^{M d} of the product of the simplex indicators
/// (every pair inside a simplex at max-norm distance < 2 eps).
class JOracle {
public:
    virtual ~JOracle() = default;
    virtual JEstimate integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) = 0;
};

/// Plain Monte Carlo over the whole M d-dimensional cube. Each pattern gets
/// its own stream derived from the seed, and results are cached, so calls
/// are reproducible and thread-safe.
class MonteCarloJOracle : public JOracle {
public:
    MonteCarloJOracle(std::uint64_t samples, SeedSpec seed, int max_total_dim = 12);
    JEstimate integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) override;

private:
    std::uint64_t samples_;
    SeedSpec seed_;
    int max_total_dim_;
    std::mutex mu_;
    std::map<std::string, JEstimate> cache_;
};

/// Exact values where a closed form exists: a single simplex, two simplices
/// with at least one common vertex, and products of such components.
/// Throws DomainError for anything else.
class ClosedFormJOracle : public JOracle {
public:
    JEstimate integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) override;
};

/// Integrates each connected component separately and multiplies, using the
/// closed form when it applies and the fallback otherwise.
class FactorizingJOracle : public JOracle {
public:
    explicit FactorizingJOracle(JOracle& fallback) : fallback_(fallback) {}
    JEstimate integrate(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon) override;

private:
    JOracle& fallback_;
    ClosedFormJOracle closed_;
};

/// Monte Carlo integral with a standard error; exposed for the CLI.
JEstimate j_oracle_mc(const OverlapPattern& pattern, const TorusSpec& spec, double epsilon,
                      std::uint64_t samples, const SeedSpec& seed, int max_total_dim = 12);

OverlapPattern pattern_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OverlapPattern& p);

}  // namespace rgc
