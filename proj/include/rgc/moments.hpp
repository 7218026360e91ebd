#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "rgc/torus.hpp"

namespace rgc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// Poisson intensity, ambient torus and radius shared by the analytic
/// formulas. Requires 0 < epsilon < a/4.
struct ModelParams {
    double lambda = 0.0;
    TorusSpec spec{};
    double epsilon = 0.0;

    void validate() const;
    /// lambda * (2 eps)^d, the expected number of points in a 2eps box.
    double x() const;
};

enum class MomentKind { Mean, Covariance, Variance, CentralMoment };

struct Truncation {
    int terms = 0;
    double tail_estimate = 0.0;
};

struct MomentValue {
    double value = 0.0;
    MomentKind kind = MomentKind::Mean;
    int order = 1;
    std::optional<Truncation> truncation;
    /// Nonzero when the value depends on Monte Carlo integrals.
    double std_error = 0.0;
};

std::string to_string(MomentKind kind);

/// Binomial coefficient; zero unless 0 <= k <= n.
BigInt binomial(long long n, long long k);
BigInt factorial(int n);

/// Stirling number of the second kind S(n, k).
BigInt stirling2(int n, int k);

/// B_n(x) = sum_k S(n, k) x^k.
double bell_polynomial(int n, double x);

/// Expected number of (k-1)-simplices.
MomentValue mean_Nk(const ModelParams& params, int k);

/// Expected number of (k-1)-simplices for n uniform points.
MomentValue mean_Nk_binomial(const TorusSpec& spec, double epsilon, std::uint64_t n, int k);

/// Expected Euler characteristic through the Bell polynomial.
MomentValue mean_chi(const ModelParams& params);

/// Same quantity as the alternating series of mean_Nk, summed until three
/// consecutive terms fall below 1e-14 of the partial sum.
MomentValue mean_chi_series(const ModelParams& params);

/// Hand-expanded forms for d = 1, 2, 3.
double mean_chi_specialized(const ModelParams& params);

/// Expected Euler characteristic for n uniform points, with alternating
/// signs. Evaluated through the falling-factorial expansion, which avoids
/// the cancellation of the direct binomial sum.
MomentValue mean_chi_binomial(const TorusSpec& spec, double epsilon, std::uint64_t n);

/// Integral of the product of two simplex indicators sharing m12 >= 1
/// vertices, with m1 and m2 private vertices.
double j2_closed_form(int m1, int m2, int m12, const TorusSpec& spec, double epsilon);

/// Cov(N_k, N_l).
MomentValue cov_Nk_Nl(const ModelParams& params, int k, int l);

/// Coefficient of (lambda (2 eps)^d)^{n-1} in Var(chi) / (lambda a^d).
Rational c_coefficient(int n, int d);

/// Partial sum of the first n_terms terms of the Var(chi) series. The tail
/// estimate is geometric in the ratio of the last two terms.
MomentValue var_chi_series(const ModelParams& params, int n_terms);

/// Var(chi) series summed until convergence.
MomentValue var_chi(const ModelParams& params);

/// Closed form of Var(chi) in one dimension.
MomentValue var_chi_1d(const ModelParams& params);

/// alpha_n from its closed form, beta_n as a power-series coefficient of
/// 2x e^{-x} - 2(x + x^2) e^{-2x}; consistent when alpha + beta = c_n^1.
struct AlphaBeta {
    Rational alpha;
    Rational beta;
    bool consistent = false;
};
AlphaBeta alpha_beta_coeffs(int n);

/// n-th power-series coefficient of p(x) e^{c x} for a polynomial p given
/// by its coefficients, exact.
Rational series_coefficient(const std::vector<Rational>& poly, const Rational& c, int n);

/// Euclidean-metric Rips moments on the 2-torus, edges at distance < r.
struct EuclidMoments {
    double EN2 = 0.0;
    double EN3 = 0.0;
    double VarN2 = 0.0;
    double VarN3 = 0.0;
};
EuclidMoments euclid_rips_moments(const TorusSpec& spec, double lambda, double r);

/// The closed forms as usually quoted in terms of eps: the means at
/// r = eps, the variances at r = 2 eps.
EuclidMoments euclid_remark_moments(const TorusSpec& spec, double lambda, double epsilon);

nlohmann::json to_json(const MomentValue& v);

}  // namespace rgc
