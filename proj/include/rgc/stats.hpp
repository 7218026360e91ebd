#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rgc {

struct Estimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> xs);

/// Sample mean with SE s / sqrt(n).
Estimate mean_estimate(std::span<const double> xs);
/// Unbiased variance with SE sqrt((m4 - m2^2) / n).
Estimate variance_estimate(std::span<const double> xs);
/// Sample covariance (unbiased) with the SE of the mean of centred products.
Estimate covariance_estimate(std::span<const double> xs, std::span<const double> ys);
/// Third central moment (k-statistic) or fourth central moment with
/// delta-method standard errors. order must be 3 or 4.
Estimate central_moment_estimate(std::span<const double> xs, int order);

/// Biased sample central moment (1/n) sum (x - mean)^r.
double sample_central_moment(std::span<const double> xs, int r);

struct EmpiricalTail {
    std::vector<double> thresholds;
    std::vector<double> probability;  // P(X >= threshold)
    std::vector<double> std_error;    // sqrt(p (1 - p) / n)
    std::size_t sample_size = 0;
};

EmpiricalTail empirical_tail(std::span<const double> values, std::span<const double> thresholds);

/// Standard normal quantile.
double normal_quantile(double p);

struct WassersteinEstimate {
    double value = 0.0;
    std::size_t sample_size = 0;
};

/// (1/m) sum_i |x_(i) - Phi^{-1}((i - 0.5)/m)| over the sorted sample.
/// The sample is not standardized here. Needs m >= 100 and positive spread.
WassersteinEstimate wasserstein1_to_normal(std::span<const double> sample);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace rgc
