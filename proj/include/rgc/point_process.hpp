#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "rgc/rng.hpp"
#include "rgc/torus.hpp"

namespace rgc {

/// A finite simple point set on the torus. Coordinates are stored flat,
/// point-major, and always lie in [0, a).
class PointConfiguration {
public:
    PointConfiguration() = default;
    explicit PointConfiguration(TorusSpec spec);

    /// Takes coordinates in any range and reduces them mod a. Throws
    /// DomainError on a size mismatch or on bitwise-duplicate points.
    PointConfiguration(TorusSpec spec, std::vector<double> flat_coords);

    const TorusSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return spec_.d ? coords_.size() / spec_.d : 0; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * spec_.d, static_cast<std::size_t>(spec_.d)};
    }
    const std::vector<double>& coords() const noexcept { return coords_; }

    /// Appends one point (reduced mod a); no duplicate check.
    void push_back(std::span<const double> p);

    bool operator==(const PointConfiguration&) const = default;

private:
    TorusSpec spec_{};
    std::vector<double> coords_;
};

struct ProcessLaw {
    enum class Kind { Poisson, Binomial };
    Kind kind = Kind::Poisson;
    double intensity = 0.0;  // Poisson: points per unit volume
    std::uint64_t n = 0;     // Binomial: fixed point count

    static ProcessLaw poisson(double lambda);
    static ProcessLaw binomial(std::uint64_t n);
    void validate() const;
};

/// Draws one configuration. Deterministic given (law, spec, seed).
PointConfiguration sample(const ProcessLaw& law, const TorusSpec& spec, const SeedSpec& seed);

/// Same as sample() but drawing from a caller-owned engine.
PointConfiguration sample(const ProcessLaw& law, const TorusSpec& spec, Engine& eng);

/// Axis-aligned box on the torus: the points x with (x_i - lower_i) mod a <
/// sides_i for every coordinate. Sides must lie in (0, a].
struct ToroidalBox {
    std::vector<double> lower;
    std::vector<double> sides;
};

std::size_t count_in_box(const PointConfiguration& config, const ToroidalBox& box);

nlohmann::json to_json(const PointConfiguration& config);
PointConfiguration configuration_from_json(const nlohmann::json& j);

}  // namespace rgc
