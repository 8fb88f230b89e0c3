#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace holder_avg {

// d^beta for beta in (0,1]; the common exponents get exact fast paths so the
// hot inner loops (slope sups, net construction) avoid libm pow.
inline double pow_beta(double d, double beta) {
    if (beta == 1.0) return d;
    if (beta == 0.5) return std::sqrt(d);
    return std::pow(d, beta);
}

inline void require_beta(double beta) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("beta must lie in (0,1], got " + std::to_string(beta));
}

// Finite point set with pairwise distances, backed either by an explicit
// distance matrix or by coordinates under a p-norm. Indices are stable and
// all other modules refer to points by index only.
class MetricAccessor {
public:
    static constexpr double kPInfinity = std::numeric_limits<double>::infinity();

    // Square matrix, row-major. Validates symmetry (1e-12 relative), zero
    // diagonal, nonnegativity, and the triangle inequality: exhaustively for
    // n <= 512, by 1e5 seeded random triples above that. Distinct points at
    // distance zero are allowed but flag the space as a pseudometric.
    static MetricAccessor from_distance_matrix(std::size_t n, std::vector<double> matrix);

    // n points in R^dim, row-major coordinates, p-norm with p >= 1 (default
    // Euclidean; p = kPInfinity gives the max norm).
    static MetricAccessor from_coordinates(std::size_t n, std::size_t dim,
                                           std::vector<double> coords, double p = 2.0);

    std::size_t size() const { return n_; }

    double distance(std::size_t i, std::size_t j) const {
        if (matrix_mode_) return matrix_[i * n_ + j];
        return coord_distance(i, j);
    }

    double snowflake_distance(std::size_t i, std::size_t j, double beta) const {
        require_beta(beta);
        return pow_beta(distance(i, j), beta);
    }

    // true when some pair of distinct indices sits at distance zero
    bool is_pseudometric() const { return pseudometric_; }

    bool matrix_mode() const { return matrix_mode_; }
    std::size_t dim() const { return dim_; }
    double norm_p() const { return p_; }
    const std::vector<double>& coordinates() const { return coords_; }

    // out[j] = distance(x, pts[j]); one mode branch for the whole batch
    // instead of one per element, which matters in the extension hot loop.
    void distances_to(std::size_t x, const std::vector<std::size_t>& pts, double* out) const;

private:
    MetricAccessor() = default;
    double coord_distance(std::size_t i, std::size_t j) const;
    void validate_matrix() const;
    void detect_duplicate_coordinates();

    bool matrix_mode_ = false;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    double p_ = 2.0;
    std::vector<double> matrix_;
    std::vector<double> coords_;
    bool pseudometric_ = false;
};

struct Net {
    double radius = 0.0;
    std::vector<std::size_t> centers;  // point indices, in acceptance order
};

// Greedy t-net over `subset` (point indices, scanned in the given order): a
// point joins the centers iff it is at distance >= t from all current
// centers. The result is simultaneously a t-packing and a t-cover of subset.
Net greedy_net(const MetricAccessor& m, const std::vector<std::size_t>& subset, double t);

struct VoronoiPartition {
    std::vector<std::size_t> owner;              // point index -> position into centers
    std::vector<std::vector<std::size_t>> cells; // per center position, member point indices
};

// Nearest-center assignment of every point of the space; distance ties go to
// the smallest center position. Throws when centers is empty.
VoronoiPartition voronoi_assign(const MetricAccessor& m, const std::vector<std::size_t>& centers);

// Same, but checks the covering contract of the net: every point must lie
// within net.radius of its owner, otherwise a consistency error is thrown.
VoronoiPartition voronoi(const MetricAccessor& m, const Net& net);

// Max pairwise distance over subset; 0 for a singleton, error when empty.
double diameter(const MetricAccessor& m, const std::vector<std::size_t>& subset);

}  // namespace holder_avg
