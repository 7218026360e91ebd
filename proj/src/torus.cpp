#include "rgc/torus.hpp"

#include <algorithm>
#include <cmath>

#include "rgc/errors.hpp"

namespace rgc {

void TorusSpec::validate() const {
    if (d < 1) throw DomainError("torus dimension d must be >= 1");
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("torus side length a must be > 0");
}

double TorusSpec::volume() const { return std::pow(a, d); }

std::string to_string(Metric m) { return m == Metric::MaxNorm ? "max" : "euclidean"; }

Metric metric_from_string(const std::string& s) {
    if (s == "max" || s == "maxnorm" || s == "MaxNorm") return Metric::MaxNorm;
    if (s == "euclidean" || s == "Euclidean") return Metric::Euclidean;
    throw DomainError("unknown metric '" + s + "'");
}

double wrap_coordinate(double x, double a) {
    double r = std::fmod(x, a);
    if (r < 0.0) r += a;
    // fmod of a tiny negative value can round up to exactly a
    if (r >= a) r = 0.0;
    return r;
}

double toroidal_coordinate_distance(double x, double y, double a) {
    if (!(a > 0.0)) throw DomainError("side length must be positive");
    if (!(x >= 0.0 && x < a) || !(y >= 0.0 && y < a))
        throw DomainError("coordinate outside [0, a)");
    const double diff = std::fabs(x - y);
    return std::min(diff, a - diff);
}

double torus_distance(std::span<const double> p, std::span<const double> q,
                      const TorusSpec& spec, Metric metric) {
    if (p.size() != static_cast<std::size_t>(spec.d) || q.size() != p.size())
        throw DomainError("point dimension does not match torus dimension");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double c = toroidal_coordinate_distance(p[i], q[i], spec.a);
        if (metric == Metric::MaxNorm)
            acc = std::max(acc, c);
        else
            acc += c * c;
    }
    return metric == Metric::MaxNorm ? acc : std::sqrt(acc);
}

double circular_spread(std::vector<double> xs, double a) {
    if (xs.size() < 2) return 0.0;
    std::sort(xs.begin(), xs.end());
    double max_gap = xs.front() + a - xs.back();
    for (std::size_t i = 1; i < xs.size(); ++i) max_gap = std::max(max_gap, xs[i] - xs[i - 1]);
    return a - max_gap;
}

}  // namespace rgc
