#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rgc/complex.hpp"
#include "rgc/errors.hpp"
#include "rgc/harness.hpp"
#include "rgc/higher_moments.hpp"
#include "rgc/homology.hpp"
#include "rgc/jintegral.hpp"
#include "rgc/json_io.hpp"
#include "rgc/moments.hpp"
#include "rgc/point_process.hpp"
#include "rgc/stats.hpp"
#include "rgc/subcomplex.hpp"
#include "rgc/tail_bounds.hpp"

using nlohmann::json;
using namespace rgc;

namespace {

struct Common {
    int d = 1;
    double a = 1.0;
    double eps = 0.0;
    double lambda = 0.0;
    std::optional<std::uint64_t> seed;
    std::string in;
    std::string out;
    unsigned threads = 0;
    std::string metric = "max";
    std::string convention = "rips";
};

TorusSpec torus(const Common& c) {
    TorusSpec s{c.d, c.a};
    s.validate();
    return s;
}

ComplexParams complex_params(const Common& c) {
    ComplexParams p;
    p.epsilon = c.eps;
    p.metric = metric_from_string(c.metric);
    p.convention = convention_from_string(c.convention);
    return p;
}

// Missing required flags detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t require_seed(const Common& c) {
    if (!c.seed) throw UsageError("this subcommand is stochastic and needs --seed");
    return *c.seed;
}

void emit(const Common& c, const json& j) {
    const std::string text = dump_json(j, 2) + "\n";
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
}

void log_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// "edge", "path:<n>", "complete:<k>" or a JSON file with {"n", "edges"}.
GammaGraph parse_gamma(const std::string& s) {
    if (s == "edge") return GammaGraph::edge();
    auto arg = [&](std::size_t prefix) { return std::stoi(s.substr(prefix)); };
    if (s.rfind("path:", 0) == 0) return GammaGraph::path(arg(5));
    if (s.rfind("complete:", 0) == 0) return GammaGraph::complete(arg(9));
    return gamma_from_json(read_json_file(s));
}

json moment(const Common& c, const std::string& quantity, int k, int l, std::uint64_t n, int terms, int order,
            std::uint64_t samples) {
    const TorusSpec spec = torus(c);
    if (quantity == "mean_Nk_binomial") return to_json(mean_Nk_binomial(spec, c.eps, n, k));
    if (quantity == "mean_chi_binomial") return to_json(mean_chi_binomial(spec, c.eps, n));
    if (quantity == "euclid") {
        const EuclidMoments m = euclid_remark_moments(spec, c.lambda, c.eps);
        return {{"EN2", m.EN2}, {"EN3", m.EN3}, {"VarN2", m.VarN2}, {"VarN3", m.VarN3}};
    }
    const ModelParams mp{c.lambda, spec, c.eps};
    mp.validate();
    if (quantity == "mean_Nk") return to_json(mean_Nk(mp, k));
    if (quantity == "mean_chi") return to_json(mean_chi(mp));
    if (quantity == "mean_chi_series") return to_json(mean_chi_series(mp));
    if (quantity == "mean_chi_specialized") return {{"value", mean_chi_specialized(mp)}, {"kind", "mean"}};
    if (quantity == "cov") return to_json(cov_Nk_Nl(mp, k, l));
    if (quantity == "var_chi") return to_json(var_chi(mp));
    if (quantity == "var_chi_series") return to_json(var_chi_series(mp, terms));
    if (quantity == "var_chi_1d") return to_json(var_chi_1d(mp));
    if (quantity == "central_moment") {
        MonteCarloJOracle mc(samples, {require_seed(c), 0});
        FactorizingJOracle oracle(mc);
        return to_json(nth_moment_assembler(mp, k, order, oracle));
    }
    throw DomainError("unknown moment quantity '" + quantity + "'");
}

json tail(const Common& c, const std::string& quantity, double y, std::optional<double> var,
          std::vector<double> grid, std::size_t reps, const std::string& csv) {
    const TorusSpec spec = torus(c);
    const ModelParams mp{c.lambda, spec, c.eps};
    if (quantity == "beta0") {
        ModelParams bp = mp;
        if (bp.epsilon == 0.0) bp.epsilon = spec.a / 8.0;  // the bound does not depend on eps
        bp.validate();
        if (grid.empty()) return {{"quantity", "beta0"}, {"y", y}, {"bound", beta0_tail_bound(bp, y)}};
        const TailBoundCurve curve = beta0_curve(bp, grid);
        if (reps == 0) {
            json pts = json::array();
            for (const auto& p : curve.grid) pts.push_back({{"y", p.threshold}, {"bound", p.bound}});
            return {{"quantity", "beta0"}, {"grid", pts}};
        }
        ExperimentConfig cfg;
        cfg.id = "tail/beta0";
        cfg.law = ProcessLaw::poisson(c.lambda);
        cfg.spec = spec;
        cfg.params = complex_params(c);
        cfg.replications = reps;
        cfg.master_seed = require_seed(c);
        cfg.quantities = {"beta0"};
        cfg.threads = c.threads;
        const ReplicationReport rep = run_experiment(cfg);
        const BoundReport br = validate_bound(curve, empirical_tail(rep.values("beta0"), grid));
        if (!csv.empty()) write_text_file(csv, to_csv(br));
        json rows = json::array();
        for (const auto& r : br.rows)
            rows.push_back({{"y", r.threshold}, {"bound", r.bound}, {"empirical", r.empirical},
                            {"stderr", r.std_error}, {"violated", r.violated}});
        return {{"quantity", "beta0"}, {"rows", rows}, {"violations", br.violations()}};
    }
    if (quantity == "chi2d") {
        if (spec.d != 2) throw DomainError("the chi bound is for the 2-torus");
        const double v = var ? *var : (mp.validate(), var_chi(mp).value);
        if (grid.empty()) return {{"quantity", "chi2d"}, {"x", y}, {"var_chi", v}, {"bound", chi2d_tail_bound(v, y)}};
        const TailBoundCurve curve = chi2d_curve(v, grid);
        if (reps == 0) {
            json pts = json::array();
            for (const auto& p : curve.grid) pts.push_back({{"x", p.threshold}, {"bound", p.bound}});
            return {{"quantity", "chi2d"}, {"var_chi", v}, {"grid", pts}};
        }
        mp.validate();
        ExperimentConfig cfg;
        cfg.id = "tail/chi2d";
        cfg.law = ProcessLaw::poisson(c.lambda);
        cfg.spec = spec;
        cfg.params = complex_params(c);
        cfg.replications = reps;
        cfg.master_seed = require_seed(c);
        cfg.quantities = {"chi"};
        cfg.threads = c.threads;
        const ReplicationReport rep = run_experiment(cfg);
        const double mean = mean_chi(mp).value;
        std::vector<double> shifted;
        for (double x : grid) shifted.push_back(mean + x);
        const BoundReport br = validate_bound(curve, empirical_tail(rep.values("chi"), shifted));
        if (!csv.empty()) write_text_file(csv, to_csv(br));
        json rows = json::array();
        for (const auto& r : br.rows)
            rows.push_back({{"x", r.threshold}, {"bound", r.bound}, {"empirical", r.empirical},
                            {"stderr", r.std_error}, {"violated", r.violated}});
        return {{"quantity", "chi2d"}, {"var_chi", v}, {"rows", rows}, {"violations", br.violations()}};
    }
    throw DomainError("tail quantity must be beta0 or chi2d");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random geometric complexes on the flat torus"};
    app.require_subcommand(1);
    Common c;

    auto add_torus = [&](CLI::App* s) {
        s->add_option("--d", c.d, "torus dimension");
        s->add_option("--a", c.a, "torus side length");
    };
    auto add_complex = [&](CLI::App* s) {
        s->add_option("--eps", c.eps, "scale parameter epsilon")->required();
        s->add_option("--metric", c.metric, "max or euclidean");
        s->add_option("--convention", c.convention, "rips, subcomplex or cech");
    };
    auto add_io = [&](CLI::App* s) { s->add_option("--out", c.out, "write JSON here instead of stdout"); };
    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "master seed"); };
    auto add_threads = [&](CLI::App* s) { s->add_option("--threads", c.threads, "worker threads (0 = all)"); };

    auto* s_sample = app.add_subcommand("sample", "draw a point configuration");
    std::optional<std::uint64_t> n_points;
    std::uint64_t stream = 0;
    add_torus(s_sample);
    add_seed(s_sample);
    add_io(s_sample);
    s_sample->add_option("--lambda", c.lambda, "Poisson intensity");
    s_sample->add_option("--n", n_points, "fixed point count (binomial process)");
    s_sample->add_option("--stream", stream, "seed stream index");

    auto* s_complex = app.add_subcommand("complex", "simplex counts of the complex on a configuration");
    int max_dim = kAllDims;
    std::size_t cap = 10'000'000;
    s_complex->add_option("--in", c.in, "configuration JSON")->required();
    add_complex(s_complex);
    add_io(s_complex);
    s_complex->add_option("--max-dim", max_dim, "largest simplex dimension to enumerate");
    s_complex->add_option("--cap", cap, "simplex cap");

    auto* s_homology = app.add_subcommand("homology", "Betti numbers and Euler characteristic");
    s_homology->add_option("--in", c.in, "configuration JSON")->required();
    add_complex(s_homology);
    add_io(s_homology);
    s_homology->add_option("--max-dim", max_dim, "largest simplex dimension to build");
    s_homology->add_option("--cap", cap, "simplex cap");

    auto* s_moment = app.add_subcommand("moment", "closed-form moments");
    std::string quantity;
    int k = 1, l = 1, terms = 60, order = 3;
    std::uint64_t samples = 1'000'000;
    add_torus(s_moment);
    add_io(s_moment);
    add_seed(s_moment);
    s_moment->add_option("--quantity", quantity,
                         "mean_Nk, mean_chi, mean_chi_series, mean_chi_specialized, cov, var_chi, var_chi_series, "
                         "var_chi_1d, mean_Nk_binomial, mean_chi_binomial, euclid, central_moment")
        ->required();
    s_moment->add_option("--eps", c.eps, "scale parameter epsilon")->required();
    s_moment->add_option("--lambda", c.lambda, "Poisson intensity");
    s_moment->add_option("--k", k, "simplex size");
    s_moment->add_option("--l", l, "second simplex size (cov)");
    s_moment->add_option("--n", n_points, "binomial point count");
    s_moment->add_option("--terms", terms, "series terms (var_chi_series)");
    s_moment->add_option("--order", order, "central moment order 2..4");
    s_moment->add_option("--samples", samples, "integration samples per overlap pattern");

    auto* s_tail = app.add_subcommand("tail", "concentration bounds, optionally checked against simulation");
    double y = 0.0;
    std::optional<double> var;
    std::vector<double> grid;
    std::size_t reps = 0;
    std::string csv;
    add_torus(s_tail);
    add_io(s_tail);
    add_seed(s_tail);
    add_threads(s_tail);
    s_tail->add_option("--quantity", quantity, "beta0 or chi2d")->required();
    s_tail->add_option("--lambda", c.lambda, "Poisson intensity")->required();
    s_tail->add_option("--eps", c.eps, "scale parameter epsilon");
    s_tail->add_option("--y,--x", y, "threshold y (beta0) or deviation x (chi2d)");
    s_tail->add_option("--var", var, "Var(chi) for the chi bound (default: closed form)");
    s_tail->add_option("--grid", grid, "threshold grid")->delimiter(',');
    s_tail->add_option("--reps", reps, "replications for the empirical check");
    s_tail->add_option("--csv", csv, "write the check table as CSV");

    auto* s_sub = app.add_subcommand("subcount", "occurrences of a pattern graph");
    std::string gamma_spec = "edge";
    s_sub->add_option("--in", c.in, "configuration JSON")->required();
    add_complex(s_sub);
    add_io(s_sub);
    s_sub->add_option("--gamma", gamma_spec, "edge, path:<n>, complete:<k> or a JSON file");

    auto* s_exp = app.add_subcommand("experiment", "Monte Carlo experiment from a JSON config");
    std::string raw_path;
    bool include_raw = false;
    s_exp->add_option("--in", c.in, "experiment config JSON")->required();
    add_seed(s_exp);
    add_threads(s_exp);
    add_io(s_exp);
    s_exp->add_option("--raw", raw_path, "write raw per-replication values as CSV");
    s_exp->add_flag("--include-raw", include_raw, "embed raw values in the JSON report");

    auto* s_clt = app.add_subcommand("clt", "distance to normality of a standardized pattern count");
    std::vector<double> lambdas;
    add_torus(s_clt);
    add_complex(s_clt);
    add_seed(s_clt);
    add_threads(s_clt);
    add_io(s_clt);
    s_clt->add_option("--gamma", gamma_spec, "edge, path:<n>, complete:<k> or a JSON file");
    s_clt->add_option("--lambdas", lambdas, "increasing intensities")->delimiter(',')->required();
    s_clt->add_option("--reps", reps, "replications per intensity")->required();

    auto* s_cov = app.add_subcommand("coverage", "frequency of recovering the torus homology");
    add_torus(s_cov);
    add_complex(s_cov);
    add_seed(s_cov);
    add_threads(s_cov);
    add_io(s_cov);
    s_cov->add_option("--lambdas", lambdas, "intensities")->delimiter(',')->required();
    s_cov->add_option("--reps", reps, "replications per intensity")->required();

    auto* s_j = app.add_subcommand("j-oracle", "overlap integral by Monte Carlo and, where known, closed form");
    std::string pattern_text;
    int m1 = -1, m2 = -1, m12 = -1, dim_cap = 12;
    add_torus(s_j);
    add_seed(s_j);
    add_io(s_j);
    s_j->add_option("--eps", c.eps, "scale parameter epsilon")->required();
    s_j->add_option("--pattern", pattern_text, "pattern JSON text or file");
    s_j->add_option("--m1", m1, "vertices only in the first simplex");
    s_j->add_option("--m2", m2, "vertices only in the second simplex");
    s_j->add_option("--m12", m12, "shared vertices");
    s_j->add_option("--samples", samples, "Monte Carlo samples");
    s_j->add_option("--dim-cap", dim_cap, "largest integration dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*s_sample) {
            const TorusSpec spec = torus(c);
            const ProcessLaw law = n_points ? ProcessLaw::binomial(*n_points) : ProcessLaw::poisson(c.lambda);
            emit(c, to_json(sample(law, spec, SeedSpec{require_seed(c), stream})));
        } else if (*s_complex || *s_homology) {
            const PointConfiguration pts = configuration_from_json(read_json_file(c.in));
            ComplexParams p = complex_params(c);
            p.simplex_cap = cap;
            const BuildMode mode = *s_homology ? BuildMode::Homology : BuildMode::Counting;
            log_warnings(p.validate(pts.spec(), mode));
            const GeometricComplex cx = build_complex(pts, p, max_dim, mode);
            log_warnings(cx.warnings());
            if (*s_complex) {
                emit(c, summary_json(cx));
            } else {
                const EulerResult e = euler_characteristic(cx);
                emit(c, to_json(e, check_structural_props(e.betti, pts.spec(),
                                                          e.chi_from_counts ? e.chi_from_counts : e.chi_from_betti)));
            }
        } else if (*s_moment) {
            emit(c, moment(c, quantity, k, l, n_points.value_or(0), terms, order, samples));
        } else if (*s_tail) {
            emit(c, tail(c, quantity, y, var, grid, reps, csv));
        } else if (*s_sub) {
            const PointConfiguration pts = configuration_from_json(read_json_file(c.in));
            const ComplexParams p = complex_params(c);
            log_warnings(p.validate(pts.spec(), BuildMode::Counting));
            const GammaGraph g = parse_gamma(gamma_spec);
            g.validate();
            emit(c, {{"gamma", to_json(g)},
                     {"automorphisms", automorphism_count(g)},
                     {"g_gamma", count_gamma(pts, p, g)}});
        } else if (*s_exp) {
            ExperimentConfig cfg = experiment_from_json(read_json_file(c.in));
            if (c.seed) cfg.master_seed = *c.seed;
            if (c.threads) cfg.threads = c.threads;
            log_warnings(cfg.params.validate(cfg.spec, cfg.check_homology ? BuildMode::Homology : BuildMode::Counting));
            const ReplicationReport rep = run_experiment(cfg);
            if (!raw_path.empty()) write_text_file(raw_path, raw_csv(cfg, rep));
            json j = to_json(rep, include_raw);
            j["id"] = cfg.id;
            j["seed"] = cfg.master_seed;
            emit(c, j);
        } else if (*s_clt) {
            emit(c, to_json(clt_rate_experiment(parse_gamma(gamma_spec), torus(c), complex_params(c), lambdas, reps,
                                                require_seed(c), c.threads)));
        } else if (*s_cov) {
            emit(c, to_json(coverage_experiment(torus(c), complex_params(c), lambdas, reps, require_seed(c),
                                                c.threads)));
        } else if (*s_j) {
            const TorusSpec spec = torus(c);
            OverlapPattern pattern = OverlapPattern::single(1);
            if (!pattern_text.empty()) {
                const bool inline_json = pattern_text.find('{') != std::string::npos;
                pattern = pattern_from_json(inline_json ? json::parse(pattern_text) : read_json_file(pattern_text));
            } else if (m1 >= 0 && m2 >= 0 && m12 >= 0) {
                pattern = OverlapPattern::two(m1, m2, m12);
            } else {
                throw DomainError("give --pattern or all of --m1, --m2, --m12");
            }
            const JEstimate mc = j_oracle_mc(pattern, spec, c.eps, samples, {require_seed(c), 0}, dim_cap);
            json j{{"pattern", to_json(pattern)}, {"mc", mc.value}, {"mc_stderr", mc.std_error}};
            try {
                ClosedFormJOracle exact;
                j["closed_form"] = exact.integrate(pattern, spec, c.eps).value;
            } catch (const DomainError&) {
                j["closed_form"] = nullptr;
            }
            emit(c, j);
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cout << dump_json({{"error", e.what()}, {"reached_dim", e.reached_dim()}}) << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cout << dump_json({{"error", e.what()}}) << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cout << dump_json({{"error", std::string("malformed JSON input: ") + e.what()}}) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << dump_json({{"error", e.what()}}) << "\n";
        return 1;
    }
    return 0;
}
