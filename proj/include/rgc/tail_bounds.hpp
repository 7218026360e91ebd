#pragma once

#include <string>
#include <vector>

#include "rgc/moments.hpp"
#include "rgc/stats.hpp"

namespace rgc {

enum class TailQuantity { Beta0, Chi2D };

std::string to_string(TailQuantity q);

struct TailPoint {
    double threshold = 0.0;  // y for beta_0, deviation x for chi
    double bound = 1.0;
};

struct TailBoundCurve {
    TailQuantity quantity = TailQuantity::Beta0;
    std::vector<TailPoint> grid;
};

/// Upper bound on P(beta_0 >= y), valid for y > lambda a^d.
double beta0_tail_bound(const ModelParams& params, double y);

/// Upper bound on P(chi - E chi >= x) on the 2-torus given Var(chi).
double chi2d_tail_bound(double var_chi, double x);

TailBoundCurve beta0_curve(const ModelParams& params, const std::vector<double>& thresholds);
TailBoundCurve chi2d_curve(double var_chi, const std::vector<double>& deviations);

struct BoundCheckRow {
    double threshold = 0.0;
    double bound = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    bool violated = false;
};

struct BoundReport {
    TailQuantity quantity = TailQuantity::Beta0;
    std::vector<BoundCheckRow> rows;

    std::size_t violations() const;
};

/// Flags grid points where the empirical tail minus 3 SE exceeds the bound.
/// The empirical tail must be evaluated at the curve's thresholds (for chi,
/// at mean + deviation).
BoundReport validate_bound(const TailBoundCurve& curve, const EmpiricalTail& empirical);

/// Columns: quantity, threshold, bound, empirical, stderr, violated.
std::string to_csv(const BoundReport& report);

}  // namespace rgc
