#include "rgc/moments.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "rgc/errors.hpp"

namespace rgc {

void ModelParams::validate() const {
    spec.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be > 0");
    if (!(epsilon < spec.a / 4.0)) throw DomainError("epsilon must be < a/4");
}

double ModelParams::x() const { return lambda * std::pow(2.0 * epsilon, spec.d); }

std::string to_string(MomentKind kind) {
    switch (kind) {
        case MomentKind::Mean: return "mean";
        case MomentKind::Covariance: return "covariance";
        case MomentKind::Variance: return "variance";
        case MomentKind::CentralMoment: return "central_moment";
    }
    return "mean";
}

BigInt factorial(int n) {
    if (n < 0) throw DomainError("factorial of a negative number");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt b = 1;
    for (long long i = 1; i <= k; ++i) {
        b *= n - k + i;
        b /= i;
    }
    return b;
}

BigInt stirling2(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw DomainError("stirling2 needs 0 <= k <= n");
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int j = m; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

double bell_polynomial(int n, double x) {
    if (n < 0) throw DomainError("Bell polynomial index must be >= 0");
    HighFloat acc = 0, xp = 1, hx = x;
    for (int k = 0; k <= n; ++k) {
        acc += HighFloat(stirling2(n, k)) * xp;
        xp *= hx;
    }
    return acc.convert_to<double>();
}

namespace {

HighFloat hpow(HighFloat base, int e) {
    HighFloat r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

MomentValue mean_Nk(const ModelParams& params, int k) {
    params.validate();
    if (k < 1) throw DomainError("k must be >= 1");
    const int d = params.spec.d;
    HighFloat x = params.lambda * std::pow(2.0 * params.epsilon, d);
    HighFloat v = HighFloat(params.lambda) * params.spec.volume() * hpow(HighFloat(k), d);
    for (int i = 1; i <= k; ++i) {
        if (i < k) v *= x;
        v /= i;
    }
    return {v.convert_to<double>(), MomentKind::Mean, 1, std::nullopt, 0.0};
}

MomentValue mean_Nk_binomial(const TorusSpec& spec, double epsilon, std::uint64_t n, int k) {
    spec.validate();
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
    if (k < 0) throw DomainError("k must be >= 0");
    MomentValue out{0.0, MomentKind::Mean, 1, std::nullopt, 0.0};
    if (k == 0 || static_cast<std::uint64_t>(k) > n) return out;
    const HighFloat r = HighFloat(2.0 * epsilon / spec.a);
    HighFloat v = hpow(HighFloat(k), spec.d) * hpow(hpow(r, spec.d), k - 1);
    for (int i = 1; i <= k; ++i) v = v * HighFloat(n - k + i) / i;
    out.value = v.convert_to<double>();
    return out;
}

MomentValue mean_chi(const ModelParams& params) {
    params.validate();
    const int d = params.spec.d;
    const double x = params.x();
    const double scale = std::pow(params.spec.a / (2.0 * params.epsilon), d);
    return {scale * std::exp(-x) * -bell_polynomial(d, -x), MomentKind::Mean, 1, std::nullopt, 0.0};
}

MomentValue mean_chi_series(const ModelParams& params) {
    params.validate();
    const int d = params.spec.d;
    const HighFloat x = params.x();
    HighFloat sum = 0;
    HighFloat base = HighFloat(params.lambda) * params.spec.volume();  // lambda a^d x^{k-1} / k!
    int small = 0;
    int k = 1;
    HighFloat term = 0;
    for (; k <= 100000; ++k) {
        if (k > 1) base = base * x / k;
        term = base * hpow(HighFloat(k), d);
        sum += (k % 2 ? 1 : -1) * term;
        if (k > x && abs(term) <= 1e-14 * abs(sum))
            ++small;
        else
            small = 0;
        if (small >= 3) break;
    }
    return {sum.convert_to<double>(), MomentKind::Mean, 1, Truncation{k, term.convert_to<double>()}, 0.0};
}

double mean_chi_specialized(const ModelParams& params) {
    params.validate();
    const double x = params.x(), lam = params.lambda, vol = params.spec.volume();
    switch (params.spec.d) {
        case 1: return vol * lam * std::exp(-x);
        case 2: return vol * lam * std::exp(-x) * (1.0 - x);
        case 3: return vol * lam * std::exp(-x) * (1.0 - 3.0 * x + x * x);
        default: throw DomainError("hand-expanded mean of chi is available for d = 1, 2, 3 only");
    }
}

MomentValue mean_chi_binomial(const TorusSpec& spec, double epsilon, std::uint64_t n) {
    spec.validate();
    if (!(epsilon > 0.0) || !(epsilon < spec.a / 4.0)) throw DomainError("epsilon must lie in (0, a/4)");
    MomentValue out{0.0, MomentKind::Mean, 1, std::nullopt, 0.0};
    if (n == 0) return out;
    // sum_k (-1)^{k+1} C(n,k) k^d y^{k-1} = -(1/y) sum_j S(d,j) n^(j) (-y)^j (1-y)^{n-j}
    const HighFloat y = hpow(HighFloat(2.0 * epsilon / spec.a), spec.d);
    HighFloat acc = 0, falling = 1;
    for (int j = 1; j <= spec.d && static_cast<std::uint64_t>(j) <= n; ++j) {
        falling *= HighFloat(n - j + 1);
        acc += HighFloat(stirling2(spec.d, j)) * falling * hpow(-y, j) * pow(1 - y, HighFloat(n - j));
    }
    out.value = (-acc / y).convert_to<double>();
    return out;
}

double j2_closed_form(int m1, int m2, int m12, const TorusSpec& spec, double epsilon) {
    spec.validate();
    if (m12 < 1) throw DomainError("simplices without a common vertex factorize; the two-simplex form needs m12 >= 1");
    if (m1 < 0 || m2 < 0) throw DomainError("vertex counts must be nonnegative");
    const double base = m1 + m2 + m12 + 2.0 * m1 * m2 / (m12 + 1.0);
    const int d = spec.d;
    return std::pow(base, d) * spec.volume() * std::pow(2.0 * epsilon, (m1 + m2 + m12 - 1) * d);
}

MomentValue cov_Nk_Nl(const ModelParams& params, int k, int l) {
    params.validate();
    if (k < 1 || l < 1) throw DomainError("k and l must be >= 1");
    if (l > k) std::swap(k, l);
    const int d = params.spec.d;
    const HighFloat x = params.x();
    HighFloat sum = 0;
    for (int i = 1; i <= l; ++i) {
        const HighFloat geometric = (HighFloat(k + l - i) + HighFloat(2 * (k - i) * (l - i)) / (i + 1));
        HighFloat term = HighFloat(params.lambda) * params.spec.volume() * hpow(x, k + l - i - 1) *
                         hpow(geometric, d);
        term /= HighFloat(factorial(i) * factorial(k - i) * factorial(l - i));
        sum += term;
    }
    const MomentKind kind = k == l ? MomentKind::Variance : MomentKind::Covariance;
    return {sum.convert_to<double>(), kind, 2, std::nullopt, 0.0};
}

Rational c_coefficient(int n, int d) {
    if (n < 1 || d < 1) throw DomainError("c coefficient needs n >= 1 and d >= 1");
    static std::mutex mu;
    static std::map<std::pair<int, int>, Rational> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({n, d}); it != cache.end()) return it->second;
    }
    auto rpow = [](Rational b, int e) {
        Rational r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    std::vector<BigInt> fact(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 2; i <= n; ++i) fact[i] = fact[i - 1] * i;
    Rational c = 0;
    for (int j = (n + 2) / 2; j <= n; ++j) {
        for (int i = n - j + 1; i <= j; ++i) {
            const Rational geometric = Rational(n) + Rational(2 * (n - i) * (n - j), 1 + i + j - n);
            Rational term = Rational(2) / Rational(fact[n - j] * fact[n - i] * fact[i + j - n]);
            term *= rpow(geometric, d);
            c += (i + j) % 2 ? -term : term;
        }
        const Rational diag = Rational(n) + Rational(2 * (n - j) * (n - j), 1 + 2 * j - n);
        c -= rpow(diag, d) / Rational(fact[n - j] * fact[n - j] * fact[2 * j - n]);
    }
    std::lock_guard lock(mu);
    cache.emplace(std::make_pair(n, d), c);
    return c;
}

namespace {

HighFloat to_high(const Rational& r) {
    return HighFloat(boost::multiprecision::numerator(r)) / HighFloat(boost::multiprecision::denominator(r));
}

}  // namespace

MomentValue var_chi_series(const ModelParams& params, int n_terms) {
    params.validate();
    if (n_terms < 1) throw DomainError("n_terms must be >= 1");
    const int d = params.spec.d;
    const HighFloat x = params.x();
    HighFloat sum = 0, xp = 1, last = 0, prev = 0;
    for (int n = 1; n <= n_terms; ++n) {
        prev = last;
        last = to_high(c_coefficient(n, d)) * xp;
        sum += last;
        xp *= x;
    }
    const HighFloat scale = HighFloat(params.lambda) * params.spec.volume();
    double tail = abs(last * scale).convert_to<double>();
    if (n_terms > 1 && prev != 0) {
        const double q = abs(last / prev).convert_to<double>();
        if (q < 1.0) tail *= q / (1.0 - q);
    }
    return {(sum * scale).convert_to<double>(), MomentKind::Variance, 2, Truncation{n_terms, tail}, 0.0};
}

MomentValue var_chi(const ModelParams& params) {
    params.validate();
    const int d = params.spec.d;
    const HighFloat x = params.x();
    HighFloat sum = 0, xp = 1, term = 0;
    int small = 0, n = 1;
    for (; n <= 2000; ++n) {
        term = to_high(c_coefficient(n, d)) * xp;
        sum += term;
        xp *= x;
        if (n > x && abs(term) <= 1e-14 * abs(sum))
            ++small;
        else
            small = 0;
        if (small >= 3) break;
    }
    const HighFloat scale = HighFloat(params.lambda) * params.spec.volume();
    return {(sum * scale).convert_to<double>(), MomentKind::Variance, 2,
            Truncation{std::min(n, 2000), abs(term * scale).convert_to<double>()}, 0.0};
}

MomentValue var_chi_1d(const ModelParams& params) {
    params.validate();
    if (params.spec.d != 1) throw DomainError("the closed form for Var(chi) holds for d = 1 only");
    const double lam = params.lambda, eps = params.epsilon;
    const double v = params.spec.a * (lam * std::exp(-2.0 * lam * eps) - 4.0 * lam * lam * eps * std::exp(-4.0 * lam * eps));
    return {v, MomentKind::Variance, 2, std::nullopt, 0.0};
}

Rational series_coefficient(const std::vector<Rational>& poly, const Rational& c, int n) {
    Rational out = 0;
    for (int j = 0; j < static_cast<int>(poly.size()) && j <= n; ++j) {
        Rational cp = 1;
        for (int m = 0; m < n - j; ++m) cp *= c;
        out += poly[j] * cp / Rational(factorial(n - j));
    }
    return out;
}

AlphaBeta alpha_beta_coeffs(int n) {
    if (n < 0) throw DomainError("n must be >= 0");
    AlphaBeta ab;
    if (n >= 1) {
        BigInt pow2 = BigInt(1) << n;
        ab.alpha = Rational(BigInt(1) - pow2) / Rational(factorial(n - 1));
        if (n % 2) ab.alpha = -ab.alpha;
    }
    ab.beta = series_coefficient({0, 2}, -1, n) + series_coefficient({0, -2, -2}, -2, n);
    ab.consistent = n == 0 ? (ab.alpha == 0 && ab.beta == 0) : ab.alpha + ab.beta == c_coefficient(n, 1);
    return ab;
}

EuclidMoments euclid_rips_moments(const TorusSpec& spec, double lambda, double r) {
    spec.validate();
    if (spec.d != 2) throw DomainError("Euclidean closed forms are available for d = 2 only");
    if (!(r >= 0.0) || !(r < spec.a / 2.0)) throw DomainError("radius must lie in [0, a/2)");
    if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
    constexpr double pi = std::numbers::pi;
    const double sqrt3 = std::sqrt(3.0);
    const double lens = pi * (pi - 3.0 * sqrt3 / 4.0);
    const double chain = pi * pi * pi - 5.0 * pi / 6.0 - pi * pi * sqrt3;
    const double a2 = spec.a * spec.a;
    const double r2 = r * r;
    EuclidMoments m;
    m.EN2 = pi * lambda * lambda * a2 * r2 / 2.0;
    m.EN3 = lens * std::pow(lambda, 3) * a2 * r2 * r2 / 6.0;
    m.VarN2 = m.EN2 + std::pow(lambda, 3) * a2 * pi * pi * r2 * r2;
    m.VarN3 = m.EN3 + std::pow(lambda, 4) / 2.0 * a2 * chain * std::pow(r, 6) +
              std::pow(lambda, 5) / 4.0 * a2 * lens * lens * std::pow(r, 8);
    return m;
}

EuclidMoments euclid_remark_moments(const TorusSpec& spec, double lambda, double epsilon) {
    spec.validate();
    if (spec.d != 2) throw DomainError("Euclidean closed forms are available for d = 2 only");
    constexpr double pi = std::numbers::pi;
    const double a = spec.a, lam = lambda, eps = epsilon;
    const double lens = pi - 3.0 * std::sqrt(3.0) / 4.0;
    const double q = 4.0 * lam * eps * eps;
    const double scale = std::pow(a / (2.0 * eps), 2);
    EuclidMoments m;
    m.EN2 = pi * std::pow(a * lam * eps, 2) / 2.0;
    m.EN3 = pi * lens * std::pow(lam, 3) * a * a * std::pow(eps, 4) / 6.0;
    m.VarN2 = scale * (pi / 2.0 * q * q + pi * pi * q * q * q);
    m.VarN3 = scale * (q * q * q * pi / 6.0 * lens +
                       std::pow(q, 4) * pi * (pi * pi / 2.0 - 5.0 / 12.0 - pi * std::sqrt(3.0) / 2.0) +
                       std::pow(q, 5) * pi * pi / 4.0 * lens * lens);
    return m;
}

nlohmann::json to_json(const MomentValue& v) {
    nlohmann::json j{{"value", v.value}, {"kind", to_string(v.kind)}, {"order", v.order}};
    if (v.truncation)
        j["truncation"] = {{"terms", v.truncation->terms}, {"tail_estimate", v.truncation->tail_estimate}};
    if (v.std_error > 0.0) j["std_error"] = v.std_error;
    return j;
}

}  // namespace rgc
