#pragma once

#include <span>
#include <string>
#include <vector>

namespace rgc {

/// The flat torus [0, a)^d with opposite faces identified.
struct TorusSpec {
    int d = 1;
    double a = 1.0;

    /// Throws DomainError unless d >= 1 and a > 0.
    void validate() const;
    double volume() const;

    bool operator==(const TorusSpec&) const = default;
};

enum class Metric { MaxNorm, Euclidean };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

/// Reduce x into the canonical range [0, a).
double wrap_coordinate(double x, double a);

/// Wrap-around distance between two coordinates already in [0, a):
/// min(|x - y|, a - |x - y|).
double toroidal_coordinate_distance(double x, double y, double a);

/// Toroidal distance between two points with d coordinates each.
/// MaxNorm takes the largest per-coordinate wrap distance, Euclidean the
/// root of the summed squares.
double torus_distance(std::span<const double> p, std::span<const double> q,
                      const TorusSpec& spec, Metric metric = Metric::MaxNorm);

/// Smallest length of a closed arc of the circle of circumference a that
/// contains every value in xs. Used for the max-norm Čech test: open arcs of
/// half-width r around the values share a point iff the spread is < 2r.
double circular_spread(std::vector<double> xs, double a);

}  // namespace rgc
