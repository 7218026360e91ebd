#include "rgc/tail_bounds.hpp"

#include <cmath>
#include <cstdio>

#include "rgc/errors.hpp"

namespace rgc {

std::string to_string(TailQuantity q) { return q == TailQuantity::Beta0 ? "beta0" : "chi2d"; }

double beta0_tail_bound(const ModelParams& params, double y) {
    params.validate();
    const double proxy = params.lambda * params.spec.volume();
    if (!(y > proxy)) throw DomainError("bound valid only above the mean proxy lambda a^d");
    const double c = std::pow(std::pow(2.0, params.spec.d) - 1.0, 2);
    const double excess = y - proxy;
    return std::exp(-excess / 2.0 * std::log1p(excess / (c * params.lambda)));
}

double chi2d_tail_bound(double var_chi, double x) {
    if (!(var_chi > 0.0)) throw DomainError("Var(chi) must be > 0");
    if (!(x > 0.0)) throw DomainError("deviation must be > 0");
    return std::exp(-x / 4.0 * std::log1p(2.0 * x / var_chi));
}

TailBoundCurve beta0_curve(const ModelParams& params, const std::vector<double>& thresholds) {
    TailBoundCurve c{TailQuantity::Beta0, {}};
    for (double y : thresholds) c.grid.push_back({y, beta0_tail_bound(params, y)});
    return c;
}

TailBoundCurve chi2d_curve(double var_chi, const std::vector<double>& deviations) {
    TailBoundCurve c{TailQuantity::Chi2D, {}};
    for (double x : deviations) c.grid.push_back({x, chi2d_tail_bound(var_chi, x)});
    return c;
}

std::size_t BoundReport::violations() const {
    std::size_t v = 0;
    for (const auto& r : rows) v += r.violated;
    return v;
}

BoundReport validate_bound(const TailBoundCurve& curve, const EmpiricalTail& empirical) {
    if (empirical.probability.size() != curve.grid.size())
        throw DomainError("empirical tail and bound grid differ in length");
    BoundReport rep{curve.quantity, {}};
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        BoundCheckRow r;
        r.threshold = curve.grid[i].threshold;
        r.bound = curve.grid[i].bound;
        r.empirical = empirical.probability[i];
        r.std_error = empirical.std_error[i];
        r.violated = r.empirical - 3.0 * r.std_error > r.bound;
        rep.rows.push_back(r);
    }
    return rep;
}

std::string to_csv(const BoundReport& report) {
    std::string out = "quantity,threshold,bound,empirical,stderr,violated\n";
    char buf[256];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%d\n", to_string(report.quantity).c_str(),
                      r.threshold, r.bound, r.empirical, r.std_error, r.violated ? 1 : 0);
        out += buf;
    }
    return out;
}

}  // namespace rgc
