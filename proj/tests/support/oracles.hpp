#pragma once

// Independent reference computations for the unit tests. None of these call
// into the library's formula code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double wrap_diff(double x, double y, double a) {
    double t = std::fmod(std::fabs(x - y), a);
    return std::min(t, a - t);
}

// Max-norm or Euclidean toroidal distance between flat points p and q.
inline double dist(const double* p, const double* q, int d, double a, bool euclid) {
    double m = 0.0, s = 0.0;
    for (int c = 0; c < d; ++c) {
        const double t = wrap_diff(p[c], q[c], a);
        m = std::max(m, t);
        s += t * t;
    }
    return euclid ? std::sqrt(s) : m;
}

// Shortest arc containing every value, by trying each value as arc start.
inline double arc_spread(std::vector<double> xs, double a) {
    double best = a;
    for (double start : xs) {
        double reach = 0.0;
        for (double x : xs) {
            double off = std::fmod(x - start, a);
            if (off < 0) off += a;
            reach = std::max(reach, off);
        }
        best = std::min(best, reach);
    }
    return best;
}

enum class Rule { Strict, Closed, Cech };

// Counts k-subsets, k = 1..max_k, forming a simplex by exhaustive search.
inline std::vector<std::uint64_t> brute_force_counts(const std::vector<double>& flat, int d, double a, double r,
                                                     bool euclid, Rule rule, int max_k) {
    const int n = static_cast<int>(flat.size()) / d;
    std::vector<std::uint64_t> out(max_k, 0);
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int from) {
        const int k = static_cast<int>(idx.size());
        if (k > 0) {
            bool ok = true;
            if (rule == Rule::Cech) {
                for (int c = 0; c < d && ok; ++c) {
                    std::vector<double> xs;
                    for (int i : idx) xs.push_back(flat[i * d + c]);
                    ok = arc_spread(xs, a) < r;
                }
            } else {
                for (int i = 0; i < k && ok; ++i)
                    for (int j = i + 1; j < k && ok; ++j) {
                        const double t = dist(&flat[idx[i] * d], &flat[idx[j] * d], d, a, euclid);
                        ok = rule == Rule::Strict ? t < r : t <= r;
                    }
            }
            if (!ok) return;
            ++out[k - 1];
        }
        if (k == max_k) return;
        for (int v = from; v < n; ++v) {
            idx.push_back(v);
            rec(v + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return out;
}

// Dobinski: B_n(x) = e^{-x} sum_j j^n x^j / j!.
inline double bell_dobinski(int n, double x) {
    double sum = 0.0, term = 1.0;  // x^j / j!
    for (int j = 0; j < 400; ++j) {
        if (j > 0) term *= x / j;
        sum += std::pow(static_cast<double>(j), n) * term;
        if (j > std::fabs(x) + 10 && std::fabs(std::pow(static_cast<double>(j), n) * term) < 1e-18 * std::fabs(sum)) break;
    }
    return std::exp(-x) * sum;
}

// S(n, k) = (1/k!) sum_j (-1)^j C(k, j) (k - j)^n.
inline BigInt stirling2_explicit(int n, int k) {
    BigInt sum = 0, c = 1, fact = 1;
    for (int j = 0; j <= k; ++j) {
        BigInt p = 1;
        for (int e = 0; e < n; ++e) p *= (k - j);
        sum += (j % 2 ? -1 : 1) * c * p;
        c = c * (k - j) / (j + 1);
    }
    for (int i = 2; i <= k; ++i) fact *= i;
    return sum / fact;
}

inline BigInt choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

inline BigInt fact(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Expected Euler characteristic of n uniform points with y = (2 eps / a)^d,
// as the direct alternating sum of expected simplex counts.
inline Rational binomial_chi_direct(int n, int d, const Rational& y) {
    Rational sum = 0, ypow = 1;
    for (int k = 1; k <= n; ++k) {
        BigInt kd = 1;
        for (int e = 0; e < d; ++e) kd *= k;
        sum += Rational((k % 2 ? 1 : -1) * choose(n, k) * kd) * ypow;
        ypow *= y;
    }
    return sum;
}

// Central-moment expansion of N_k by diagrams: every multiset of vertex
// masks over n simplices giving each simplex k vertices, with no simplex
// isolated, weighted by 1 / prod_A c_A!.
inline std::map<std::vector<std::uint32_t>, Rational> diagram_terms(int k, int n) {
    std::map<std::vector<std::uint32_t>, Rational> out;
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<int> sizes(n, 0);
    std::vector<std::uint32_t> masks;
    std::function<void(std::uint32_t, BigInt)> rec = [&](std::uint32_t mask, BigInt denom) {
        if (std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == k; })) {
            for (int m = 0; m < n; ++m) {
                bool shared = false;
                for (auto v : masks)
                    if ((v >> m & 1u) && v != (1u << m)) shared = true;
                if (!shared) return;
            }
            out[masks] += Rational(1) / Rational(denom);
            return;
        }
        if (mask > full) return;
        // choose the multiplicity of this mask
        int room = k;
        for (int m = 0; m < n; ++m)
            if (mask >> m & 1u) room = std::min(room, k - sizes[m]);
        for (int c = 0; c <= room; ++c) {
            for (int m = 0; m < n; ++m)
                if (mask >> m & 1u) sizes[m] += c;
            masks.insert(masks.end(), c, mask);
            rec(mask + 1, denom * fact(c));
            masks.erase(masks.end() - c, masks.end());
            for (int m = 0; m < n; ++m)
                if (mask >> m & 1u) sizes[m] -= c;
        }
    };
    rec(1u, BigInt(1));
    return out;
}

inline double poisson_pmf(double mean, int j) { return std::exp(j * std::log(mean) - mean - std::lgamma(j + 1.0)); }

// Plain Monte Carlo of the max-norm overlap integral: masks give, per
// vertex, the simplices containing it; pairs sharing a simplex must be
// within 2 eps in every coordinate.
inline std::pair<double, double> overlap_mc(const std::vector<std::uint32_t>& masks, int d, double a, double eps,
                                            std::uint64_t samples, std::uint64_t seed) {
    std::mt19937 gen(static_cast<std::uint32_t>(seed));
    std::uniform_real_distribution<double> u(0.0, a);
    const std::size_t M = masks.size();
    std::vector<double> x(M * d);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (double& c : x) c = u(gen);
        bool ok = true;
        for (std::size_t i = 0; i < M && ok; ++i)
            for (std::size_t j = i + 1; j < M && ok; ++j)
                if (masks[i] & masks[j]) ok = dist(&x[i * d], &x[j * d], d, a, false) < 2 * eps;
        hits += ok;
    }
    const double vol = std::pow(a, static_cast<double>(M * d));
    const double p = static_cast<double>(hits) / samples;
    return {vol * p, vol * std::sqrt(p * (1 - p) / samples)};
}

// Simpson's rule on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n = 2000) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

// Rank over GF(2) by dense elimination on bit rows.
inline std::size_t dense_gf2_rank(std::vector<std::vector<bool>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p][c]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c])
                for (std::size_t j = 0; j < cols; ++j) rows[r][j] = rows[r][j] != rows[rank][j];
        ++rank;
    }
    return rank;
}

}  // namespace oracle
