#pragma once

#include <vector>

#include "holder_avg/measure.hpp"
#include "holder_avg/metric_space.hpp"

namespace holder_avg {

// Per-point local slopes of a function at a fixed exponent. Entries may be
// +infinity (coincident points carrying different values); infinities are an
// explicit marker, never a large finite stand-in.
struct SlopeProfile {
    double beta = 1.0;
    std::vector<double> values;
};

// sup over y in B \ {i} of |f(i)-f(y)| / d(i,y)^beta. Pairs at distance zero
// with equal values carry no slope information and are skipped; at distance
// zero with different values the slope is +infinity. Empty candidate set -> 0.
double beta_slope(const MetricAccessor& m, const std::vector<double>& f, std::size_t i,
                  double beta, const std::vector<std::size_t>& reference);

// beta_slope at every point of the space against the same reference set.
SlopeProfile slope_profile(const MetricAccessor& m, const std::vector<double>& f, double beta,
                           const std::vector<std::size_t>& reference);

// reference = the whole space
SlopeProfile slope_profile(const MetricAccessor& m, const std::vector<double>& f, double beta);

// Mean of the profile under mu. Zero-weight infinities are ignored; an
// infinite entry with positive weight makes the mean +infinity.
double average_slope(const SlopeProfile& profile, const DiscreteMeasure& mu);

// sup_{t>0} t * P(Z >= t) for a finite nonnegative Z. For atoms the sup is
// attained at one of the distinct values, so the scan is exact.
double weak_mean(const std::vector<double>& values, const std::vector<double>& weights);

// weak_mean of the profile under mu, with the same infinity rule as
// average_slope.
double weak_average_slope(const SlopeProfile& profile, const DiscreteMeasure& mu);

// Per-entry slopes of a labeled sample against the sample's own point set:
// entry i gets sup over sample points X_j with X_j != X_i of
// |Y_i - Y_j| / d(X_i,X_j)^beta, with the distance-zero rules above (a label
// conflict at coincident points yields +infinity). Entries at the same point
// share one sup, so the cost is quadratic in the number of distinct points.
std::vector<double> sample_slopes(const MetricAccessor& m, const std::vector<std::size_t>& points,
                                  const std::vector<double>& labels, double beta);

// Mean of sample_slopes: the empirical average slope of the label assignment.
double empirical_average_slope(const MetricAccessor& m, const std::vector<std::size_t>& points,
                               const std::vector<double>& labels, double beta);

}  // namespace holder_avg
