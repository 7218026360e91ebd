#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rgc/point_process.hpp"
#include "rgc/torus.hpp"

namespace rgc {

/// How a set of points is tested for spanning a simplex.
///  RipsHalfOpen2Eps: every pair at distance < 2*eps (flag complex).
///  SubcomplexEps:    every pair at distance <= eps (flag complex).
///  CechHalfOpenEps:  the open max-norm eps-balls share a point, i.e. in
///                    every coordinate the points fit in an arc shorter than
///                    2*eps. Max-norm only. Not a flag complex on the torus
///                    once eps >= a/6.
enum class Convention { RipsHalfOpen2Eps, SubcomplexEps, CechHalfOpenEps };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

enum class BuildMode { Counting, Homology };

struct ComplexParams {
    double epsilon = 0.0;
    Metric metric = Metric::MaxNorm;
    Convention convention = Convention::RipsHalfOpen2Eps;
    std::size_t simplex_cap = 10'000'000;

    /// Throws DomainError on invalid values. With BuildMode::Homology an
    /// epsilon >= a/4 is rejected; with Counting it only yields a warning.
    std::vector<std::string> validate(const TorusSpec& spec, BuildMode mode) const;

    /// Largest pairwise distance an edge may have (2*eps or eps).
    double pair_radius() const;
    bool pair_passes(double distance) const;
};

/// Sentinel for "enumerate up to the largest clique".
inline constexpr int kAllDims = std::numeric_limits<int>::max();

/// Threshold graph with, per vertex, the sorted list of higher-indexed
/// neighbours.
struct ThresholdGraph {
    std::vector<std::vector<std::uint32_t>> higher;

    std::size_t vertex_count() const noexcept { return higher.size(); }
    std::size_t edge_count() const;
    bool adjacent(std::uint32_t u, std::uint32_t v) const;
};

/// Built with a toroidal cell grid when there are at least three cells per
/// axis, otherwise by scanning all pairs.
ThresholdGraph build_threshold_graph(const PointConfiguration& config, const ComplexParams& params);

class GeometricComplex {
public:
    const ComplexParams& params() const noexcept { return params_; }
    const PointConfiguration& vertices() const noexcept { return vertices_; }

    /// Highest dimension whose simplices were enumerated (-1 if none).
    int max_dim_built() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
    /// True when simplices exist above max_dim_built.
    bool truncated() const noexcept { return truncated_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Number of j-simplices; 0 above max_dim_built.
    std::size_t simplex_count(int dim) const;
    /// N_k, the number of (k-1)-simplices, for k >= 1.
    std::size_t N(int k) const { return simplex_count(k - 1); }
    /// N_1..N_{max_dim_built+1}.
    std::vector<std::size_t> counts() const;

    /// Vertices of the idx-th j-simplex, ascending. Simplices of each
    /// dimension are kept in lexicographic order.
    std::span<const std::uint32_t> simplex(int dim, std::size_t idx) const;
    /// Position of a sorted vertex tuple among the simplices of its
    /// dimension, or npos.
    std::size_t index_of(std::span<const std::uint32_t> vertices) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    friend GeometricComplex build_complex(const PointConfiguration&, const ComplexParams&, int, BuildMode);
    ComplexParams params_{};
    PointConfiguration vertices_;
    std::vector<std::vector<std::uint32_t>> simplices_;  // flat, (j+1) ids per j-simplex
    bool truncated_ = false;
    std::vector<std::string> warnings_;
};

/// Enumerates all simplices of dimension <= max_dim by ordered extension of
/// the threshold graph. Throws ResourceLimitError past params.simplex_cap.
GeometricComplex build_complex(const PointConfiguration& config, const ComplexParams& params,
                               int max_dim = kAllDims, BuildMode mode = BuildMode::Counting);

/// Simplex counts N_1..N_{max_dim+1} without storing simplices. Trailing
/// zero counts are dropped when max_dim is kAllDims.
std::vector<std::uint64_t> simplex_counts(const PointConfiguration& config, const ComplexParams& params,
                                          int max_dim = kAllDims);

/// The simplex indicator for k points (1 for k <= 1).
bool phi_k(std::span<const std::span<const double>> points, const TorusSpec& spec, const ComplexParams& params);

/// Sparse matrix over GF(2) stored by columns; each column holds its
/// nonzero row indices in ascending order.
struct SparseGF2Matrix {
    std::size_t rows = 0;
    std::vector<std::vector<std::uint32_t>> columns;

    std::size_t cols() const noexcept { return columns.size(); }
};

/// Boundary map from k-simplices (columns) to (k-1)-simplices (rows).
struct BoundaryMatrix {
    int k = 0;
    SparseGF2Matrix matrix;
};

BoundaryMatrix boundary_matrix(const GeometricComplex& complex, int k);

/// Product over GF(2).
SparseGF2Matrix multiply(const SparseGF2Matrix& lhs, const SparseGF2Matrix& rhs);

nlohmann::json summary_json(const GeometricComplex& complex);

}  // namespace rgc
