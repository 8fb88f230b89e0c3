#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "holder_avg/measure.hpp"
#include "holder_avg/metric_space.hpp"
#include "holder_avg/pmse.hpp"

namespace holder_avg {

struct LabeledSample {
    std::vector<std::size_t> points;  // indices into the space; repeats allowed
    std::vector<double> labels;       // in [0,1], one per entry
};

// Discard budget from a target accuracy and smoothness budget, clamped into
// (0, 1/2].
double choose_gamma(double epsilon, double L);

struct LearnerConfig {
    double beta = 1.0;
    std::optional<double> gamma;    // direct discard fraction in (0,1)
    std::optional<double> epsilon;  // or derive gamma from (epsilon, L)
    std::optional<double> L;
    std::uint64_t seed = 0;  // recorded in the hypothesis; learning is deterministic
};

struct Hypothesis {
    PmseModel model;
    double beta = 1.0;
    double gamma = 0.0;
    double net_radius = 0.0;
    std::vector<std::size_t> discarded;  // sample entry positions, ascending
    double empirical_slope = 0.0;        // mean per-entry slope of the raw labels
    std::uint64_t seed = 0;
};

// Fits labels as-is, drops the floor(gamma*n) entries with the largest local
// slopes (ties discard the larger entry position first), covers the kept
// points with a gamma^(1/beta)-net, and returns the smooth extension from the
// net. Deterministic for fixed inputs.
Hypothesis learn(const MetricAccessor& m, const LabeledSample& sample, const LearnerConfig& cfg);

double hypothesis_eval(const MetricAccessor& m, const Hypothesis& h, std::size_t x);

// Batch evaluation with one extension computation per distinct point.
std::vector<double> hypothesis_eval_batch(const MetricAccessor& m, const Hypothesis& h,
                                          const std::vector<std::size_t>& points);

// Mean absolute error of the hypothesis against a labeled sample.
double empirical_risk(const MetricAccessor& m, const Hypothesis& h, const LabeledSample& sample);

struct RiskEstimate {
    double risk = 0.0;
    std::size_t n = 0;  // held-out sample size behind the estimate
};

RiskEstimate true_risk_estimate(const MetricAccessor& m, const Hypothesis& h,
                                const LabeledSample& held_out);

// Training error together with the interpolation budget gamma*(1+2*slope)
// that the construction guarantees it never exceeds.
struct InterpolationCheck {
    double train_error = 0.0;
    double budget = 0.0;
};

InterpolationCheck interpolation_check(const MetricAccessor& m, const Hypothesis& h,
                                       const LabeledSample& sample);

// Sample-size calculator: (N(radius) + log(1/delta)) / epsilon with
// radius = (epsilon / (256 L log2(1/epsilon)))^(1/beta) and the order
// constant set to 1. covering_fn maps a radius to a covering count.
double sample_size_bound_raw(double beta, double epsilon, double delta,
                             const std::function<double(double)>& covering_fn, double L);

long long sample_size_bound(double beta, double epsilon, double delta,
                            const std::function<double(double)>& covering_fn, double L);

struct ConcentrationResult {
    double exceed_fraction = 0.0;  // trials whose empirical slope beat the bound
    double bound = 0.0;            // 4 log^2(4n/delta) (avg_slope + 1/n)
    double avg_slope = 0.0;
    std::vector<double> empirical_slopes;  // one per trial
};

// Draws `trials` i.i.d. n-samples from mu, measures the empirical average
// slope of f_star on each, and reports how often it exceeds the
// concentration bound around the true average slope.
ConcentrationResult slope_concentration_trial(const MetricAccessor& m, const DiscreteMeasure& mu,
                                              const std::vector<double>& f_star, double beta,
                                              std::size_t n, double delta, std::size_t trials,
                                              std::uint64_t seed);

}  // namespace holder_avg
