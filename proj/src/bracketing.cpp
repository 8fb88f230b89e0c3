#include "holder_avg/bracketing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "holder_avg/smoothness.hpp"

namespace holder_avg {

BracketParams bracket_params(double epsilon, double L, double beta) {
    require_beta(beta);
    if (!(epsilon > 0.0 && epsilon < 0.25))
        throw std::invalid_argument("bracket accuracy must lie in (0, 1/4), got " +
                                    std::to_string(epsilon));
    if (!(std::isfinite(L) && L > epsilon))
        throw std::invalid_argument("slope budget L must be finite and exceed the accuracy");

    BracketParams p;
    p.epsilon = epsilon;
    p.L = L;
    p.beta = beta;
    // smallest K with 2^-K <= eps; ldexp keeps the comparison exact
    int K = 1;
    while (std::ldexp(1.0, -K) > epsilon) ++K;
    p.K = K;
    p.eps_prime = std::ldexp(1.0, -K) / static_cast<double>(K + 1);
    p.net_radius = std::pow(p.eps_prime / (32.0 * L), 1.0 / beta);
    return p;
}

namespace {

void require_unit_values(const std::vector<double>& f) {
    for (double v : f) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("function values must lie in [0,1]");
    }
}

// Largest multiple of the grid step g = 2^-bits that is <= x, capped at
// 1 - 2g so the interval [alpha, alpha + 2g] stays inside [0,1]. Multiples
// of a power of two are exact in binary floating point, so the comparisons
// downstream (alpha <= f <= alpha + 2g) carry no rounding slack.
double dyadic_floor(double x, int bits) {
    const double g = std::ldexp(1.0, -bits);
    double alpha = std::floor(x / g) * g;
    const double cap = 1.0 - 2.0 * g;
    if (alpha > cap) alpha = cap;
    if (alpha < 0.0) alpha = 0.0;
    return alpha;
}

}  // namespace

Bracket bracket_for_function(const MetricAccessor& m, const DiscreteMeasure& mu,
                             const std::vector<double>& f, const BracketParams& params) {
    const std::size_t n = m.size();
    if (f.size() != n || mu.size() != n)
        throw std::invalid_argument("function and measure must match the space size");
    require_unit_values(f);

    SlopeProfile profile = slope_profile(m, f, params.beta);
    const double weak_avg = weak_average_slope(profile, mu);
    if (!(weak_avg <= params.L * (1.0 + 1e-9)))
        throw std::runtime_error("function exceeds the slope budget: weak average slope " +
                                 std::to_string(weak_avg) + " > L = " + std::to_string(params.L));

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});

    Bracket b;
    b.params = params;
    b.net = greedy_net(m, all, params.net_radius);
    b.partition = voronoi(m, b.net);

    const std::size_t cells = b.partition.cells.size();
    b.level.resize(cells);
    b.lower.resize(cells);
    b.upper.resize(cells);

    const int K = params.K;
    for (std::size_t c = 0; c < cells; ++c) {
        double min_slope = std::numeric_limits<double>::infinity();
        double min_f = 1.0;
        for (std::size_t x : b.partition.cells[c]) {
            min_slope = std::min(min_slope, profile.values[x]);
            min_f = std::min(min_f, f[x]);
        }
        // level-m threshold L / (2^(m-1) eps'), decreasing in m; take the
        // smallest level the whole cell clears
        int level = K + 1;
        for (int lev = 1; lev <= K; ++lev) {
            if (min_slope >= params.L / (std::ldexp(1.0, lev - 1) * params.eps_prime)) {
                level = lev;
                break;
            }
        }
        b.level[c] = level;
        if (level == 1) {
            b.lower[c] = 0.0;
            b.upper[c] = 1.0;
        } else if (level <= K) {
            const double alpha = dyadic_floor(min_f, level);
            b.lower[c] = alpha;
            b.upper[c] = alpha + std::ldexp(1.0, 1 - level);
        } else {
            const double alpha = dyadic_floor(min_f, K + 1);
            b.lower[c] = alpha;
            b.upper[c] = alpha + std::ldexp(1.0, -K);
        }
    }
    return b;
}

BracketReport verify_bracket(const Bracket& b, const std::vector<double>& f,
                             const DiscreteMeasure& mu) {
    if (f.size() != b.partition.owner.size() || mu.size() != f.size())
        throw std::invalid_argument("bracket, function and measure must cover the same space");
    BracketReport report;
    report.contains = true;
    for (std::size_t c = 0; c < b.partition.cells.size(); ++c) {
        double cell_mass = 0.0;
        for (std::size_t x : b.partition.cells[c]) {
            cell_mass += mu.weight(x);
            if (f[x] < b.lower[c] || f[x] > b.upper[c]) report.contains = false;
        }
        report.width += cell_mass * (b.upper[c] - b.lower[c]);
    }
    return report;
}

std::vector<double> level_masses(const Bracket& b, const DiscreteMeasure& mu) {
    if (mu.size() != b.partition.owner.size())
        throw std::invalid_argument("measure must cover the bracket's space");
    std::vector<double> mass(static_cast<std::size_t>(b.params.K) + 1, 0.0);
    for (std::size_t c = 0; c < b.partition.cells.size(); ++c) {
        double cell_mass = 0.0;
        for (std::size_t x : b.partition.cells[c]) cell_mass += mu.weight(x);
        mass[static_cast<std::size_t>(b.level[c]) - 1] += cell_mass;
    }
    return mass;
}

double bracketing_entropy_bound(const std::function<double(double)>& covering_fn,
                                double epsilon, double L, double beta) {
    require_beta(beta);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("entropy bound needs an accuracy in (0,1)");
    if (!(std::isfinite(L) && epsilon < L))
        throw std::invalid_argument("entropy bound needs eps < L");
    const double log2_inv = std::log2(1.0 / epsilon);
    const double radius = std::pow(epsilon / (128.0 * L * log2_inv), 1.0 / beta);
    const double cover = covering_fn(radius);
    if (!(cover >= 1.0) || !std::isfinite(cover))
        throw std::runtime_error("covering function must return a finite value >= 1");
    return cover * std::log(16.0 * log2_inv / epsilon);
}

}  // namespace holder_avg
