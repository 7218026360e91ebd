#include "rgc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "rgc/errors.hpp"
#include "rgc/homology.hpp"
#include "rgc/moments.hpp"

namespace rgc {

namespace {

struct Parsed {
    enum class Kind { N, Chi, Beta, Gamma } kind;
    int index = 0;
};

Parsed parse_quantity(const std::string& name) {
    auto number = [&](std::size_t from) {
        if (from >= name.size()) throw DomainError("quantity '" + name + "' lacks an index");
        std::size_t used = 0;
        const int v = std::stoi(name.substr(from), &used);
        if (from + used != name.size()) throw DomainError("bad quantity '" + name + "'");
        return v;
    };
    if (name == "chi") return {Parsed::Kind::Chi, 0};
    if (name == "gamma") return {Parsed::Kind::Gamma, 0};
    if (name.rfind("beta", 0) == 0) {
        const int i = number(4);
        if (i < 0) throw DomainError("Betti index must be >= 0");
        return {Parsed::Kind::Beta, i};
    }
    if (name.size() > 1 && name[0] == 'N') {
        const int k = number(1);
        if (k < 1) throw DomainError("simplex count index must be >= 1");
        return {Parsed::Kind::N, k};
    }
    throw DomainError("unknown quantity '" + name + "' (expected N<k>, chi, beta<i> or gamma)");
}

struct Row {
    std::vector<double> values;
    bool checked = false;
    bool euler_mismatch = false;
    std::size_t violations = 0;
    bool component_mismatch = false;
};

Row replicate(const ExperimentConfig& cfg, const std::vector<Parsed>& qs, std::uint64_t r) {
    const PointConfiguration pts = sample(cfg.law, cfg.spec, replication_seed(cfg.id, cfg.master_seed, r));
    Row row;
    row.values.assign(qs.size(), 0.0);

    bool want_chi = false, want_counts = false, want_betti = false;
    int max_k = 1, max_beta = -1;
    for (const auto& q : qs) {
        if (q.kind == Parsed::Kind::Chi) want_chi = true;
        if (q.kind == Parsed::Kind::N) {
            want_counts = true;
            max_k = std::max(max_k, q.index);
        }
        if (q.kind == Parsed::Kind::Beta) {
            want_betti = true;
            max_beta = std::max(max_beta, q.index);
        }
    }

    std::vector<std::uint64_t> counts;
    if (want_chi || want_counts) counts = simplex_counts(pts, cfg.params, want_chi ? kAllDims : max_k - 1);

    BettiVector betti;
    if (cfg.check_homology) {
        const GeometricComplex cx = build_complex(pts, cfg.params, cfg.max_dim, BuildMode::Homology);
        const EulerResult e = euler_characteristic(cx);
        row.checked = true;
        row.euler_mismatch = !e.consistent() || !e.chi_from_betti;
        const BettiVector full =
            e.chi_from_betti ? e.betti : betti_numbers(cx, std::max(0, std::min(cx.max_dim_built() - 1, cfg.spec.d)));
        row.violations = check_structural_props(full, cfg.spec, e.chi_from_counts ? e.chi_from_counts : e.chi_from_betti).size();
        row.component_mismatch = static_cast<long long>(connected_components(cx)) != full[0] && cx.simplex_count(0) > 0;
        if (want_betti) betti = betti_numbers(cx, max_beta);
    } else if (want_betti) {
        const GeometricComplex cx = build_complex(pts, cfg.params, max_beta + 1, BuildMode::Homology);
        betti = betti_numbers(cx, max_beta);
    }

    for (std::size_t i = 0; i < qs.size(); ++i) {
        const auto& q = qs[i];
        switch (q.kind) {
            case Parsed::Kind::N:
                row.values[i] = q.index - 1 < static_cast<int>(counts.size()) ? static_cast<double>(counts[q.index - 1]) : 0.0;
                break;
            case Parsed::Kind::Chi: {
                long long chi = 0;
                for (std::size_t j = 0; j < counts.size(); ++j)
                    chi += (j % 2 ? -1 : 1) * static_cast<long long>(counts[j]);
                row.values[i] = static_cast<double>(chi);
                break;
            }
            case Parsed::Kind::Beta: row.values[i] = static_cast<double>(betti[q.index]); break;
            case Parsed::Kind::Gamma:
                row.values[i] = static_cast<double>(count_gamma(pts, cfg.params, *cfg.gamma));
                break;
        }
    }
    return row;
}

// Analytic mean and variance where a formula covers the configuration.
std::pair<std::optional<double>, std::optional<double>> analytic(const ExperimentConfig& cfg, const Parsed& q) {
    const auto& p = cfg.params;
    const bool flag = p.convention != Convention::CechHalfOpenEps;
    // the <= eps convention matches < 2 (eps/2) almost surely
    const double eps = p.pair_radius() / 2.0;
    int k = q.kind == Parsed::Kind::N ? q.index : 0;
    if (q.kind == Parsed::Kind::Gamma && cfg.gamma && cfg.gamma->n == 2) k = 2;
    try {
        if (cfg.law.kind == ProcessLaw::Kind::Binomial) {
            if (p.metric != Metric::MaxNorm || !(flag || k <= 2)) return {};
            if (k >= 1) return {mean_Nk_binomial(cfg.spec, eps, cfg.law.n, k).value, std::nullopt};
            if (q.kind == Parsed::Kind::Chi && flag) return {mean_chi_binomial(cfg.spec, eps, cfg.law.n).value, std::nullopt};
            return {};
        }
        const double lam = cfg.law.intensity;
        if (p.metric == Metric::Euclidean) {
            if (cfg.spec.d != 2 || k < 1 || k > 3) return {};
            if (k == 1) return {lam * cfg.spec.volume(), lam * cfg.spec.volume()};
            const EuclidMoments m = euclid_rips_moments(cfg.spec, lam, p.pair_radius());
            return k == 2 ? std::pair{std::optional{m.EN2}, std::optional{m.VarN2}}
                          : std::pair{std::optional{m.EN3}, std::optional{m.VarN3}};
        }
        const ModelParams mp{lam, cfg.spec, eps};
        if (k >= 1 && (flag || k <= 2)) return {mean_Nk(mp, k).value, cov_Nk_Nl(mp, k, k).value};
        if (q.kind == Parsed::Kind::Chi && flag) return {mean_chi(mp).value, var_chi(mp).value};
    } catch (const DomainError&) {
    }
    return {};
}

}  // namespace

void ExperimentConfig::validate() const {
    spec.validate();
    law.validate();
    params.validate(spec, check_homology ? BuildMode::Homology : BuildMode::Counting);
    if (replications < 2) throw DomainError("need at least 2 replications");
    if (quantities.empty() && !check_homology) throw DomainError("no quantities requested");
    for (const auto& q : quantities) {
        const Parsed p = parse_quantity(q);
        if (p.kind == Parsed::Kind::Gamma && !gamma) throw DomainError("quantity gamma needs a pattern graph");
    }
    if (gamma) gamma->validate();
    if (max_dim < 0) throw DomainError("max_dim must be >= 0");
}

SeedSpec replication_seed(const std::string& id, std::uint64_t master_seed, std::uint64_t r) {
    return {master_seed, hash_combine(hash_string(id), r)};
}

const QuantityReport& ReplicationReport::quantity(const std::string& name) const {
    for (const auto& q : quantities)
        if (q.name == name) return q;
    throw DomainError("quantity '" + name + "' not in report");
}

const std::vector<double>& ReplicationReport::values(const std::string& name) const {
    for (std::size_t i = 0; i < quantities.size(); ++i)
        if (quantities[i].name == name) return raw[i];
    throw DomainError("quantity '" + name + "' not in report");
}

ReplicationReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<Parsed> qs;
    for (const auto& q : config.quantities) qs.push_back(parse_quantity(q));

    const std::size_t reps = config.replications;
    std::vector<std::optional<Row>> rows(reps);
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= reps) return;
            try {
                rows[r] = replicate(config, qs, r);
            } catch (const ResourceLimitError&) {
                rows[r].reset();
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = reps;
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    ReplicationReport rep;
    rep.requested = reps;
    rep.raw.assign(qs.size(), {});
    for (std::size_t r = 0; r < reps; ++r) {
        if (!rows[r]) {
            ++rep.excluded;
            continue;
        }
        ++rep.completed;
        rep.replication_ids.push_back(r);
        for (std::size_t i = 0; i < qs.size(); ++i) rep.raw[i].push_back(rows[r]->values[i]);
        rep.homology_checked += rows[r]->checked;
        rep.euler_mismatches += rows[r]->euler_mismatch;
        rep.structural_violations += rows[r]->violations;
        rep.component_mismatches += rows[r]->component_mismatch;
    }
    for (std::size_t i = 0; i < qs.size(); ++i) {
        QuantityReport q;
        q.name = config.quantities[i];
        if (rep.completed >= 2) {
            q.mean = mean_estimate(rep.raw[i]);
            q.variance = variance_estimate(rep.raw[i]);
        }
        std::tie(q.analytic_mean, q.analytic_variance) = analytic(config, qs[i]);
        if (q.analytic_mean && q.mean.std_error > 0.0) q.z_mean = (q.mean.estimate - *q.analytic_mean) / q.mean.std_error;
        if (q.analytic_variance && q.variance.std_error > 0.0)
            q.z_variance = (q.variance.estimate - *q.analytic_variance) / q.variance.std_error;
        rep.quantities.push_back(q);
    }
    return rep;
}

CltReport clt_rate_experiment(const GammaGraph& gamma, const TorusSpec& spec, const ComplexParams& params,
                              const std::vector<double>& lambdas, std::size_t reps, std::uint64_t seed,
                              unsigned threads) {
    if (lambdas.size() < 3) throw DomainError("need at least three intensities");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i] > lambdas[i - 1])) throw DomainError("intensities must be increasing");
    CltReport out;
    std::vector<double> log_l, log_w;
    for (double lam : lambdas) {
        ExperimentConfig cfg;
        char id[64];
        std::snprintf(id, sizeof id, "clt/%.17g", lam);
        cfg.id = id;
        cfg.law = ProcessLaw::poisson(lam);
        cfg.spec = spec;
        cfg.params = params;
        cfg.replications = reps;
        cfg.master_seed = seed;
        cfg.quantities = {"gamma"};
        cfg.gamma = gamma;
        cfg.threads = threads;
        const ReplicationReport rep = run_experiment(cfg);
        const auto& g = rep.values("gamma");
        CltPoint pt;
        pt.lambda = lam;
        pt.excluded = rep.excluded;
        pt.mean = rep.quantities[0].mean.estimate;
        pt.sd = std::sqrt(rep.quantities[0].variance.estimate);
        if (!(pt.sd > 0.0)) throw DomainError("pattern count has zero spread; cannot standardize");
        std::vector<double> z(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) z[i] = (g[i] - pt.mean) / pt.sd;
        pt.dw = wasserstein1_to_normal(z);
        log_l.push_back(std::log(lam));
        log_w.push_back(std::log(pt.dw.value));
        out.points.push_back(pt);
    }
    out.slope = fitted_slope(log_l, log_w);
    out.strictly_decreasing = true;
    out.nonincreasing_within_noise = true;
    const double noise = 1.0 / std::sqrt(static_cast<double>(reps));
    for (std::size_t i = 1; i < out.points.size(); ++i) {
        out.strictly_decreasing = out.strictly_decreasing && out.points[i].dw.value < out.points[i - 1].dw.value;
        out.nonincreasing_within_noise =
            out.nonincreasing_within_noise && out.points[i].dw.value <= out.points[i - 1].dw.value + noise;
    }
    return out;
}

CoverageReport coverage_experiment(const TorusSpec& spec, const ComplexParams& params,
                                   const std::vector<double>& lambdas, std::size_t reps, std::uint64_t seed,
                                   unsigned threads) {
    params.validate(spec, BuildMode::Homology);
    CoverageReport out;
    for (double lam : lambdas) {
        ExperimentConfig cfg;
        char id[64];
        std::snprintf(id, sizeof id, "coverage/%.17g", lam);
        cfg.id = id;
        cfg.law = ProcessLaw::poisson(lam);
        cfg.spec = spec;
        cfg.params = params;
        cfg.replications = reps;
        cfg.master_seed = seed;
        for (int i = 0; i <= spec.d; ++i) cfg.quantities.push_back("beta" + std::to_string(i));
        cfg.threads = threads;
        const ReplicationReport rep = run_experiment(cfg);
        std::vector<double> match(rep.completed, 1.0);
        for (int i = 0; i <= spec.d; ++i) {
            const double torus = binomial(spec.d, i).convert_to<double>();
            const auto& b = rep.raw[i];
            for (std::size_t r = 0; r < b.size(); ++r)
                if (b[r] != torus) match[r] = 0.0;
        }
        CoveragePoint pt;
        pt.lambda = lam;
        pt.excluded = rep.excluded;
        const double n = static_cast<double>(match.size());
        const double p = n > 0 ? compensated_sum(match) / n : 0.0;
        pt.frequency = {p, n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0};
        out.points.push_back(pt);
    }
    out.nondecreasing = true;
    for (std::size_t i = 1; i < out.points.size(); ++i) {
        const auto& a = out.points[i - 1].frequency;
        const auto& b = out.points[i].frequency;
        const double slack = 3.0 * std::hypot(a.std_error, b.std_error);
        out.nondecreasing = out.nondecreasing && b.estimate >= a.estimate - slack;
    }
    return out;
}

ExperimentConfig experiment_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.id = j.value("id", std::string("experiment"));
    const auto& law = j.at("law");
    const std::string kind = law.at("kind").get<std::string>();
    if (kind == "poisson")
        c.law = ProcessLaw::poisson(law.at("lambda").get<double>());
    else if (kind == "binomial")
        c.law = ProcessLaw::binomial(law.at("n").get<std::uint64_t>());
    else
        throw DomainError("law kind must be poisson or binomial");
    c.spec = {j.at("d").get<int>(), j.at("a").get<double>()};
    c.params.epsilon = j.at("eps").get<double>();
    c.params.metric = metric_from_string(j.value("metric", std::string("max")));
    c.params.convention = convention_from_string(j.value("convention", std::string("rips")));
    if (j.contains("simplex_cap")) c.params.simplex_cap = j.at("simplex_cap").get<std::size_t>();
    c.replications = j.at("replications").get<std::size_t>();
    c.master_seed = j.at("seed").get<std::uint64_t>();
    c.quantities = j.value("quantities", std::vector<std::string>{});
    if (j.contains("max_dim") && !j.at("max_dim").is_null()) c.max_dim = j.at("max_dim").get<int>();
    if (j.contains("gamma")) c.gamma = gamma_from_json(j.at("gamma"));
    c.check_homology = j.value("check_homology", false);
    c.threads = j.value("threads", 0u);
    return c;
}

nlohmann::json to_json(const ReplicationReport& report, bool include_raw) {
    nlohmann::json qs = nlohmann::json::array();
    for (std::size_t i = 0; i < report.quantities.size(); ++i) {
        const auto& q = report.quantities[i];
        nlohmann::json e{{"name", q.name},
                         {"mean", q.mean.estimate},
                         {"mean_se", q.mean.std_error},
                         {"variance", q.variance.estimate},
                         {"variance_se", q.variance.std_error}};
        auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
        e["analytic_mean"] = opt(q.analytic_mean);
        e["analytic_variance"] = opt(q.analytic_variance);
        e["z_mean"] = opt(q.z_mean);
        e["z_variance"] = opt(q.z_variance);
        if (include_raw) e["raw"] = report.raw[i];
        qs.push_back(e);
    }
    nlohmann::json j{{"requested", report.requested},
                     {"completed", report.completed},
                     {"excluded", report.excluded},
                     {"quantities", qs}};
    if (report.homology_checked)
        j["homology"] = {{"checked", report.homology_checked},
                         {"euler_mismatches", report.euler_mismatches},
                         {"structural_violations", report.structural_violations},
                         {"component_mismatches", report.component_mismatches}};
    return j;
}

nlohmann::json to_json(const CltReport& report) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : report.points)
        pts.push_back({{"lambda", p.lambda},
                       {"d_w", p.dw.value},
                       {"sample_size", p.dw.sample_size},
                       {"mean", p.mean},
                       {"sd", p.sd},
                       {"excluded", p.excluded}});
    return {{"points", pts},
            {"slope", report.slope},
            {"strictly_decreasing", report.strictly_decreasing},
            {"nonincreasing_within_noise", report.nonincreasing_within_noise}};
}

nlohmann::json to_json(const CoverageReport& report) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : report.points)
        pts.push_back({{"lambda", p.lambda},
                       {"frequency", p.frequency.estimate},
                       {"stderr", p.frequency.std_error},
                       {"excluded", p.excluded}});
    return {{"points", pts}, {"nondecreasing", report.nondecreasing}};
}

std::string raw_csv(const ExperimentConfig& config, const ReplicationReport& report) {
    std::string out = "rep,quantity,value\n";
    char buf[128];
    for (std::size_t r = 0; r < report.replication_ids.size(); ++r)
        for (std::size_t i = 0; i < config.quantities.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%llu,%s,%.17g\n", static_cast<unsigned long long>(report.replication_ids[r]),
                          config.quantities[i].c_str(), report.raw[i][r]);
            out += buf;
        }
    return out;
}

}  // namespace rgc
