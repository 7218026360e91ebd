#include "rgc/higher_moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rgc/errors.hpp"

namespace rgc {

MomentTerms third_moment_terms(int k) {
    if (k < 1) throw DomainError("k must be >= 1");
    MomentTerms terms;
    const Rational norm = Rational(factorial(k) * factorial(k) * factorial(k));
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            for (int s = std::max(std::abs(i - j), 1); s <= std::min(i + j, k); ++s) {
                const int u = i + j - s;
                for (int t = (u + 1) / 2; t <= std::min({u, i, j}); ++t) {
                    const BigInt w = factorial(s) * factorial(t) * binomial(k, i) * binomial(k, j) * binomial(k, s) *
                                     binomial(i, t) * binomial(j, t) * binomial(t, u - t);
                    if (w == 0) continue;
                    terms[OverlapPattern::three(k, 2 * t - u, u - t, i - t, j - t)] += Rational(w) / norm;
                }
            }
        }
    }
    return terms;
}

namespace {

using Multiset = std::vector<std::uint32_t>;  // sorted vertex masks

std::vector<std::pair<std::uint32_t, int>> types_of(const Multiset& m) {
    std::vector<std::pair<std::uint32_t, int>> out;
    for (auto x : m) {
        if (!out.empty() && out.back().first == x)
            ++out.back().second;
        else
            out.emplace_back(x, 1);
    }
    return out;
}

// One outcome of multiplying two chaoses: vertices that were identified and
// integrated, the free vertices of the resulting kernel, and the number of
// labelled slot choices producing it.
struct Outcome {
    Multiset settled;
    Multiset kernel;
    BigInt multiplicity;
};

// Enumerates the identifications between the free vertices of A and B,
// grouped by vertex type. With `full` every free vertex must be identified
// and integrated.
void contract(const Multiset& A, const Multiset& B, bool full, const std::function<void(const Outcome&)>& emit) {
    const auto ta = types_of(A), tb = types_of(B);
    const std::size_t na = ta.size(), nb = tb.size();
    if (full && A.size() != B.size()) return;
    std::vector<int> left_a(na), left_b(nb);
    for (std::size_t i = 0; i < na; ++i) left_a[i] = ta[i].second;
    for (std::size_t j = 0; j < nb; ++j) left_b[j] = tb[j].second;
    // per cell: identified then integrated, identified and kept free
    std::vector<int> integrated(na * nb, 0), kept(na * nb, 0);

    BigInt base = 1;
    for (auto& [mask, c] : ta) base *= factorial(c);
    for (auto& [mask, c] : tb) base *= factorial(c);

    std::function<void(std::size_t)> cell = [&](std::size_t idx) {
        if (idx == na * nb) {
            if (full && (std::any_of(left_a.begin(), left_a.end(), [](int v) { return v != 0; }) ||
                         std::any_of(left_b.begin(), left_b.end(), [](int v) { return v != 0; })))
                return;
            Outcome o;
            BigInt denom = 1;
            for (std::size_t i = 0; i < na; ++i) {
                denom *= factorial(left_a[i]);
                o.kernel.insert(o.kernel.end(), left_a[i], ta[i].first);
            }
            for (std::size_t j = 0; j < nb; ++j) {
                denom *= factorial(left_b[j]);
                o.kernel.insert(o.kernel.end(), left_b[j], tb[j].first);
            }
            for (std::size_t i = 0; i < na; ++i)
                for (std::size_t j = 0; j < nb; ++j) {
                    const std::size_t c = i * nb + j;
                    const std::uint32_t merged = ta[i].first | tb[j].first;
                    denom *= factorial(integrated[c]) * factorial(kept[c]);
                    o.settled.insert(o.settled.end(), integrated[c], merged);
                    o.kernel.insert(o.kernel.end(), kept[c], merged);
                }
            std::sort(o.settled.begin(), o.settled.end());
            std::sort(o.kernel.begin(), o.kernel.end());
            o.multiplicity = base / denom;
            emit(o);
            return;
        }
        const std::size_t i = idx / nb, j = idx % nb;
        const int cap = std::min(left_a[i], left_b[j]);
        for (int ni = 0; ni <= cap; ++ni) {
            for (int nk = 0; ni + nk <= cap && (!full || nk == 0); ++nk) {
                integrated[idx] = ni;
                kept[idx] = nk;
                left_a[i] -= ni + nk;
                left_b[j] -= ni + nk;
                cell(idx + 1);
                left_a[i] += ni + nk;
                left_b[j] += ni + nk;
            }
        }
        integrated[idx] = kept[idx] = 0;
    };
    cell(0);
}

struct Step {
    int a, b;
    bool full;
};

// Pairwise schedule: for even n, multiply neighbouring pairs until two
// kernels remain; for odd n, fold 1..n-1 left to right. The last step is
// the expectation of the final product.
std::vector<Step> schedule(int n) {
    std::vector<Step> steps;
    int next = n;
    if (n % 2 == 0) {
        std::vector<int> queue;
        for (int m = 0; m < n; ++m) queue.push_back(m);
        while (queue.size() > 2) {
            steps.push_back({queue[0], queue[1], false});
            queue.erase(queue.begin(), queue.begin() + 2);
            queue.push_back(next++);
        }
        steps.push_back({queue[0], queue[1], true});
    } else {
        int acc = 0;
        for (int m = 1; m < n - 1; ++m) {
            steps.push_back({acc, m, false});
            acc = next++;
        }
        steps.push_back({acc, n - 1, true});
    }
    return steps;
}

}  // namespace

MomentTerms nth_moment_terms(int k, int n) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (n < 2 || n > 4) throw DomainError("the moment assembler supports n in {2, 3, 4}");
    const auto steps = schedule(n);
    const Rational norm = [&] {
        Rational r = 1;
        for (int m = 0; m < n; ++m) r *= Rational(factorial(k));
        return r;
    }();

    MomentTerms terms;
    std::vector<int> orders(n, 1);
    for (;;) {
        Rational weight = 1 / norm;
        Multiset settled;
        std::vector<Multiset> kernels(static_cast<std::size_t>(n) + steps.size());
        for (int m = 0; m < n; ++m) {
            weight *= Rational(binomial(k, orders[m]));
            settled.insert(settled.end(), k - orders[m], 1u << m);
            kernels[m].assign(orders[m], 1u << m);
        }
        std::function<void(std::size_t, Multiset&, Rational)> run = [&](std::size_t s, Multiset& done,
                                                                         Rational w) {
            if (s == steps.size()) {
                Multiset all = done;
                std::sort(all.begin(), all.end());
                terms[OverlapPattern(n, all)] += w;
                return;
            }
            const Step& st = steps[s];
            contract(kernels[st.a], kernels[st.b], st.full, [&](const Outcome& o) {
                Multiset next_done = done;
                next_done.insert(next_done.end(), o.settled.begin(), o.settled.end());
                const std::size_t slot = static_cast<std::size_t>(n) + s;
                kernels[slot] = o.kernel;
                run(s + 1, next_done, w * Rational(o.multiplicity));
            });
        };
        run(0, settled, weight);

        int m = 0;
        while (m < n && orders[m] == k) orders[m++] = 1;
        if (m == n) break;
        ++orders[m];
    }
    for (auto it = terms.begin(); it != terms.end();) it = it->second == 0 ? terms.erase(it) : std::next(it);
    return terms;
}

MomentValue evaluate_terms(const MomentTerms& terms, const ModelParams& params, JOracle& oracle, int order) {
    params.validate();
    double value = 0.0, var = 0.0;
    for (const auto& [pattern, weight] : terms) {
        const JEstimate j = oracle.integrate(pattern, params.spec, params.epsilon);
        const double coef = weight.convert_to<double>() * std::pow(params.lambda, pattern.vertex_count());
        value += coef * j.value;
        var += coef * coef * j.std_error * j.std_error;
    }
    return {value, MomentKind::CentralMoment, order, std::nullopt, std::sqrt(var)};
}

MomentValue third_moment_Nk(const ModelParams& params, int k, JOracle& j3_oracle) {
    return evaluate_terms(third_moment_terms(k), params, j3_oracle, 3);
}

MomentValue nth_moment_assembler(const ModelParams& params, int k, int n, JOracle& j_oracle) {
    MomentValue v = evaluate_terms(nth_moment_terms(k, n), params, j_oracle, n);
    if (n == 2) v.kind = MomentKind::Variance;
    return v;
}

}  // namespace rgc
