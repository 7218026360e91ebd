#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rgc/complex.hpp"
#include "rgc/point_process.hpp"
#include "rgc/stats.hpp"
#include "rgc/subcomplex.hpp"

namespace rgc {

/// One Monte Carlo experiment. Quantities are named "N<k>" (simplex count),
/// "chi" (Euler characteristic of the full complex), "beta<i>" (Betti number
/// over GF(2)) and "gamma" (occurrences of the pattern graph).
struct ExperimentConfig {
    std::string id = "experiment";
    ProcessLaw law;
    TorusSpec spec;
    ComplexParams params;
    std::size_t replications = 1000;
    std::uint64_t master_seed = 0;
    std::vector<std::string> quantities;
    /// Dimension cap for the homology build when check_homology is set.
    int max_dim = kAllDims;
    std::optional<GammaGraph> gamma;
    /// Per replication: Euler-Poincare, structural Betti properties and the
    /// union-find component count against beta_0.
    bool check_homology = false;
    /// 0 uses every hardware thread. Results do not depend on it.
    unsigned threads = 0;

    void validate() const;
};

struct QuantityReport {
    std::string name;
    Estimate mean;
    Estimate variance;
    std::optional<double> analytic_mean;
    std::optional<double> analytic_variance;
    std::optional<double> z_mean;
    std::optional<double> z_variance;
};

struct ReplicationReport {
    std::size_t requested = 0;
    std::size_t completed = 0;
    std::size_t excluded = 0;
    std::vector<QuantityReport> quantities;
    /// Raw values per quantity, in replication order, completed ones only.
    std::vector<std::vector<double>> raw;
    std::vector<std::uint64_t> replication_ids;

    std::size_t homology_checked = 0;
    std::size_t euler_mismatches = 0;
    std::size_t structural_violations = 0;
    std::size_t component_mismatches = 0;

    const QuantityReport& quantity(const std::string& name) const;
    const std::vector<double>& values(const std::string& name) const;
};

/// Seed stream of replication r of the experiment named id.
SeedSpec replication_seed(const std::string& id, std::uint64_t master_seed, std::uint64_t r);

/// Runs every replication (in parallel), then aggregates in replication
/// order. Replications hitting the simplex cap are excluded and counted.
ReplicationReport run_experiment(const ExperimentConfig& config);

struct CltPoint {
    double lambda = 0.0;
    WassersteinEstimate dw;
    double mean = 0.0;
    double sd = 0.0;
    std::size_t excluded = 0;
};

struct CltReport {
    std::vector<CltPoint> points;
    double slope = 0.0;  // least-squares slope of log d_W against log lambda
    bool strictly_decreasing = false;
    /// Each step may rise by at most 1/sqrt(reps), the estimator's noise scale.
    bool nonincreasing_within_noise = false;
};

/// Distance to the standard normal of the standardized pattern count, for
/// each intensity.
CltReport clt_rate_experiment(const GammaGraph& gamma, const TorusSpec& spec, const ComplexParams& params,
                              const std::vector<double>& lambdas, std::size_t reps, std::uint64_t seed,
                              unsigned threads = 0);

struct CoveragePoint {
    double lambda = 0.0;
    Estimate frequency;  // P(beta_i = binom(d, i) for all i <= d)
    std::size_t excluded = 0;
};

struct CoverageReport {
    std::vector<CoveragePoint> points;
    /// Each frequency is at least the previous one minus 3 combined SE.
    bool nondecreasing = false;
};

CoverageReport coverage_experiment(const TorusSpec& spec, const ComplexParams& params,
                                   const std::vector<double>& lambdas, std::size_t reps, std::uint64_t seed,
                                   unsigned threads = 0);

ExperimentConfig experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ReplicationReport& report, bool include_raw = false);
nlohmann::json to_json(const CltReport& report);
nlohmann::json to_json(const CoverageReport& report);
/// Columns: rep, quantity, value.
std::string raw_csv(const ExperimentConfig& config, const ReplicationReport& report);

}  // namespace rgc
