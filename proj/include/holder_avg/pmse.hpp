#pragma once

#include <vector>

#include "holder_avg/metric_space.hpp"

namespace holder_avg {

// Pointwise-minimal smooth extension of values given on a base set. An
// evaluation at x maximizes
//     R_x(u,v) = (f(v) - f(u)) / (d(x,v)^beta + d(x,u)^beta)
// over ordered base pairs and returns f(u*) + R_x(u*,v*) * d(x,u*)^beta.
struct PmseModel {
    double beta = 1.0;
    std::vector<std::size_t> base;   // point indices into the space
    std::vector<double> values;      // one value per base entry, in [0,1]
    bool degenerate = false;         // all base values equal
};

// Validates the base: nonempty, values in [0,1], indices in range, and no two
// base points at distance zero carrying different values (that extension is
// infeasible and throws a runtime error).
PmseModel pmse_fit(const MetricAccessor& m, const std::vector<std::size_t>& base,
                   const std::vector<double>& values, double beta);

enum class PmseEvalPath {
    kAuto,      // pair scan for small bases, iterative for large ones
    kPairScan,  // the O(|A|^2) reference: full ordered-pair maximization
    kIterative  // fractional-programming iteration + candidate-band pair scan
};

// Evaluate on a query at the given raw distances to the base points
// (distances[j] = d(x, base[j])). A zero distance returns that base value
// directly. Both paths produce identical outputs, including the maximizer
// tie rule: candidates within 1e-12 relative of the maximum count as tied and
// the lexicographically smallest (u,v) base-position pair wins.
double pmse_eval_at(const PmseModel& model, const std::vector<double>& distances,
                    PmseEvalPath path = PmseEvalPath::kAuto);

// Evaluate at a point of the space by index.
double pmse_eval(const MetricAccessor& m, const PmseModel& model, std::size_t x,
                 PmseEvalPath path = PmseEvalPath::kAuto);

// Batch evaluation; results land in [min base value, max base value].
std::vector<double> pmse_extend_all(const MetricAccessor& m, const PmseModel& model,
                                    const std::vector<std::size_t>& targets,
                                    PmseEvalPath path = PmseEvalPath::kAuto);

}  // namespace holder_avg
