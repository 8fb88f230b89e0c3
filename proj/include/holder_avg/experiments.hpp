#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "holder_avg/learner.hpp"
#include "holder_avg/measure.hpp"
#include "holder_avg/metric_space.hpp"

namespace holder_avg {

// A ready-to-run benchmark target: point set, sampling measure and the
// function the learner is asked to recover. avg_slope_limit records the
// closed-form limit of the mu-average slope as the resolution grows when the
// family has one (+infinity for the heavy-tailed family, NaN when no closed
// form is recorded).
struct Instance {
    MetricAccessor space;
    DiscreteMeasure mu;
    std::vector<double> f_values;
    double avg_slope_limit = std::numeric_limits<double>::quiet_NaN();
};

// Step-function target 1[x > 1/2] on an even grid of cell centers (k+1/2)/R
// over [0,1], with cell masses integrated exactly from the density
// (1/Z)|x-1/2|^q: q = (beta-1)/2 for which=1 (finite average slope, divergent
// Lipschitz weak mean) and q = beta-1 for which=2 (finite weak average slope,
// divergent average slope). Requires beta in (0,1) and an even resolution so
// no cell straddles the singularity.
Instance example_instance(int which, double beta, std::size_t resolution);

// ((1+beta)/(1-beta)) * 2^beta: the closed-form limit of the average
// beta-slope for the which=1 family, beta in (0,1).
double example1_avg_slope_limit(double beta);

// Uniform measure on the grid x_k = k/(R-1) (diameter exactly 1) with the
// identity target f(x) = x. Requires resolution >= 2.
Instance uniform_grid_instance(std::size_t resolution);

// Slope statistics of an example family across resolutions: the mu-average
// slope and weak average slope at the family's exponent, and the weak
// average slope at exponent 1. Computed from the exact cell masses and the
// closed-form nearest-opposite-point slopes of the step target, so the table
// is O(R) per row.
struct SlopeTableRow {
    std::size_t resolution = 0;
    double avg_slope = 0.0;
    double weak_avg_slope = 0.0;
    double lip_weak_avg_slope = 0.0;
};

std::vector<SlopeTableRow> example_slope_table(int which, double beta,
                                               const std::vector<std::size_t>& resolutions);

// n i.i.d. point indices drawn from mu.
std::vector<std::size_t> draw_points(const DiscreteMeasure& mu, std::size_t n,
                                     std::uint64_t seed);

// Unweighted least squares y = intercept + slope*x. defined is false when
// fewer than two points, non-finite inputs, or zero x-variance make the fit
// meaningless; slope_stderr is NaN with fewer than three points.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
    bool defined = false;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Recipe for building an Instance by name; epsilon/L only matter for the
// lowerbound kind, seed only for kinds with a random ingredient.
struct GeneratorSpec {
    std::string kind = "grid-uniform";  // grid-uniform | example1 | example2 | lowerbound
    double beta = 1.0;
    std::size_t resolution = 1024;
    double epsilon = 0.1;
    double L = 8.0;
    std::uint64_t seed = 1;
};

Instance build_instance(const GeneratorSpec& spec);

// Hard-target design: an almost-full atom x0 far from a packing K of the
// heavier half of the space, carrying iid fair-coin values. k_set holds the
// packing points kept (|k_set| = floor(packing_size/2)), mu_weights puts
// 1 - eps/2 on x0 and eps/(2|k_set|) on each of k_set.
struct LowerBoundDesign {
    std::size_t x0 = 0;
    std::vector<std::size_t> k_set;
    std::vector<double> mu_weights;
    double diam = 0.0;
    double packing_radius = 0.0;
    std::size_t packing_size = 0;
};

// Deterministic part of the construction. Requires L >= 8/diam and a packing
// large enough that floor(size/2) >= 1.
LowerBoundDesign lowerbound_design(const MetricAccessor& m, double epsilon, double L,
                                   double beta);

// Fair-coin values over k_set (in k_set order); the x0 value is always 0.
std::vector<double> lowerbound_labels(const LowerBoundDesign& design, std::uint64_t seed);

// One full target draw: the design, its measure, and the smooth extension of
// the coin values from {x0} ∪ k_set to the whole space.
struct LowerBoundInstance {
    LowerBoundDesign design;
    DiscreteMeasure mu;
    std::vector<double> f_star;
};

LowerBoundInstance lowerbound_instance(const MetricAccessor& m, double epsilon, double L,
                                       double beta, std::uint64_t seed);

// Trains the learner on n draws from the design's measure against a fresh
// coin target per trial and scores it exactly over the measure's support.
// n = 0 scores the zero predictor (the best constant for this family).
struct LowerBoundTrialResult {
    double mean_risk = 0.0;
    double std_err = 0.0;
    std::vector<double> risks;  // one per trial
};

LowerBoundTrialResult lowerbound_trial(const MetricAccessor& m, double epsilon, double L,
                                       double beta, std::size_t n, std::size_t trials,
                                       std::uint64_t seed);

// Learning-curve sweep: for each n in n_grid (strictly increasing, >= 4
// values) and each trial, draw a train sample, fit with the discard budget
// chosen for the per-n accuracy target eps_n = scale * n^(-beta/(1+beta))
// (scale = the instance's exact average slope, floored at 1), and estimate
// the risk on a fresh test sample of 10*max(n_grid) draws. The fit is over
// log mean test risk vs log n; degenerate (zero-risk) sweeps leave it
// undefined.
struct SweepRow {
    std::size_t n = 0;
    std::size_t trial = 0;
    double gamma = 0.0;
    double train_risk = 0.0;
    double test_risk = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::size_t> n_grid;
    std::vector<double> mean_test_risk;  // aligned with n_grid
    LineFit fit;
    std::size_t interpolation_violations = 0;
};

// known_scale: callers that already know the instance's mu-average slope at
// this beta can pass it (it is floored at 1 like the computed value) to skip
// the quadratic slope scan on large spaces.
SweepResult risk_sweep(const Instance& inst, double beta, const std::vector<std::size_t>& n_grid,
                       std::size_t trials, std::uint64_t seed,
                       std::optional<double> known_scale = {});

}  // namespace holder_avg
