#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "holder_avg/measure.hpp"
#include "holder_avg/metric_space.hpp"

namespace holder_avg {

// Resolution constants of a bracket construction at accuracy eps:
//   K         = smallest integer with 2^-K <= eps
//   eps_prime = 1 / ((K+1) * 2^K), satisfies eps_prime >= eps / (4*log2(1/eps))
//   net_radius = (eps_prime / (32*L))^(1/beta)
struct BracketParams {
    double epsilon = 0.0;
    double L = 0.0;
    double beta = 1.0;
    int K = 0;
    double eps_prime = 0.0;
    double net_radius = 0.0;
};

// Validates eps in (0, 1/4), L > eps, beta in (0,1] and derives the rest.
BracketParams bracket_params(double epsilon, double L, double beta);

// Piecewise-constant envelope pair over a Voronoi partition of the space.
// Cell j carries a dyadic interval [lower[j], upper[j]] and a level index
// level[j] in {1, ..., K+1}; upper - lower = 2^(1-m) at level m <= K and
// 2^-K at level K+1.
struct Bracket {
    BracketParams params;
    Net net;
    VoronoiPartition partition;
    std::vector<int> level;
    std::vector<double> lower;
    std::vector<double> upper;
};

// Builds the envelope pair for f (values in [0,1]) over the net-radius
// Voronoi partition. Cells are classified by the minimum local slope of
// their members: level m is the smallest index in [1..K] whose threshold
// L / (2^(m-1) * eps_prime) the whole cell clears, and cells clearing no
// threshold land at level K+1. Level-1 cells get (0,1); a level-m cell gets
// the widest dyadic interval of width 2^(1-m) (2^-K at level K+1) whose
// lower end is the largest grid value <= the cell's minimum of f, capped so
// the interval stays inside [0,1].
//
// Precondition: the weak average slope of f under mu is at most L (checked
// with 1e-9 relative headroom; violation throws).
Bracket bracket_for_function(const MetricAccessor& m, const DiscreteMeasure& mu,
                             const std::vector<double>& f, const BracketParams& params);

struct BracketReport {
    bool contains = false;  // lower <= f <= upper at every point
    double width = 0.0;     // sum over cells of mu(cell) * (upper - lower)
};

BracketReport verify_bracket(const Bracket& b, const std::vector<double>& f,
                             const DiscreteMeasure& mu);

// Total mu-mass of the cells at each level; entry m-1 holds level m,
// so the vector has K+1 entries summing to 1.
std::vector<double> level_masses(const Bracket& b, const DiscreteMeasure& mu);

// Log-cardinality bound for the full envelope family at accuracy eps:
//   covering_fn((eps / (128 * L * log2(1/eps)))^(1/beta)) * ln(16*log2(1/eps)/eps).
// covering_fn maps a radius to a covering number (>= 1). Requires 0 < eps < 1
// and eps < L.
double bracketing_entropy_bound(const std::function<double(double)>& covering_fn,
                                double epsilon, double L, double beta);

inline double bracketing_entropy_bound(const std::function<double(double)>& covering_fn,
                                       const BracketParams& params) {
    return bracketing_entropy_bound(covering_fn, params.epsilon, params.L, params.beta);
}

}  // namespace holder_avg
