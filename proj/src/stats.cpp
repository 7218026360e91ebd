#include "rgc/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "rgc/errors.hpp"

namespace rgc {

double compensated_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

namespace {

void require(std::size_t n, std::size_t min) {
    if (n < min) throw DomainError("need at least " + std::to_string(min) + " values");
}

double mean_of(std::span<const double> xs) { return compensated_sum(xs) / static_cast<double>(xs.size()); }

std::vector<double> central_powers(std::span<const double> xs, double mu, int r) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::pow(xs[i] - mu, r);
    return out;
}

}  // namespace

double sample_central_moment(std::span<const double> xs, int r) {
    require(xs.size(), 1);
    const auto p = central_powers(xs, mean_of(xs), r);
    return compensated_sum(p) / static_cast<double>(xs.size());
}

Estimate mean_estimate(std::span<const double> xs) {
    require(xs.size(), 2);
    const double n = static_cast<double>(xs.size());
    const double var = sample_central_moment(xs, 2) * n / (n - 1.0);
    return {mean_of(xs), std::sqrt(var / n)};
}

Estimate variance_estimate(std::span<const double> xs) {
    require(xs.size(), 2);
    const double n = static_cast<double>(xs.size());
    const double m2 = sample_central_moment(xs, 2), m4 = sample_central_moment(xs, 4);
    return {m2 * n / (n - 1.0), std::sqrt(std::max(m4 - m2 * m2, 0.0) / n)};
}

Estimate covariance_estimate(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DomainError("samples differ in length");
    require(xs.size(), 2);
    const double n = static_cast<double>(xs.size());
    const double mx = mean_of(xs), my = mean_of(ys);
    std::vector<double> prod(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) prod[i] = (xs[i] - mx) * (ys[i] - my);
    const double m11 = compensated_sum(prod) / n;
    std::vector<double> dev(prod.size());
    for (std::size_t i = 0; i < prod.size(); ++i) dev[i] = (prod[i] - m11) * (prod[i] - m11);
    const double var_prod = compensated_sum(dev) / (n - 1.0);
    return {m11 * n / (n - 1.0), std::sqrt(var_prod / n)};
}

Estimate central_moment_estimate(std::span<const double> xs, int order) {
    const double n = static_cast<double>(xs.size());
    if (order == 3) {
        require(xs.size(), 3);
        const double m2 = sample_central_moment(xs, 2), m3 = sample_central_moment(xs, 3);
        const double m4 = sample_central_moment(xs, 4), m6 = sample_central_moment(xs, 6);
        const double k3 = m3 * n * n / ((n - 1.0) * (n - 2.0));
        const double v = m6 - m3 * m3 - 6.0 * m4 * m2 + 9.0 * m2 * m2 * m2;
        return {k3, std::sqrt(std::max(v, 0.0) / n)};
    }
    if (order == 4) {
        require(xs.size(), 4);
        const double m2 = sample_central_moment(xs, 2), m3 = sample_central_moment(xs, 3);
        const double m4 = sample_central_moment(xs, 4), m5 = sample_central_moment(xs, 5);
        const double m8 = sample_central_moment(xs, 8);
        const double v = m8 - m4 * m4 - 8.0 * m5 * m3 + 16.0 * m2 * m3 * m3;
        return {m4, std::sqrt(std::max(v, 0.0) / n)};
    }
    throw DomainError("central moment order must be 3 or 4");
}

EmpiricalTail empirical_tail(std::span<const double> values, std::span<const double> thresholds) {
    if (values.empty()) throw DomainError("empirical tail of an empty sample");
    EmpiricalTail t;
    t.sample_size = values.size();
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    for (double y : thresholds) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), y) - sorted.begin();
        const double p = (n - static_cast<double>(below)) / n;
        t.thresholds.push_back(y);
        t.probability.push_back(p);
        t.std_error.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return t;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

WassersteinEstimate wasserstein1_to_normal(std::span<const double> sample) {
    if (sample.size() < 100) throw DomainError("Wasserstein estimate needs at least 100 values");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    if (x.front() == x.back()) throw DomainError("degenerate sample with zero spread");
    const double m = static_cast<double>(x.size());
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        dev[i] = std::fabs(x[i] - normal_quantile((static_cast<double>(i) + 0.5) / m));
    return {compensated_sum(dev) / m, x.size()};
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("slope needs two equally long samples of size >= 2");
    const double mx = mean_of(x), my = mean_of(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("slope undefined for constant x");
    return sxy / sxx;
}

}  // namespace rgc
