#include "holder_avg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "holder_avg/pmse.hpp"
#include "holder_avg/rng.hpp"
#include "holder_avg/smoothness.hpp"

namespace holder_avg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact masses of the density (1/Z)|x-1/2|^(c-1) over the cells of an even
// R-grid, folded by symmetry: entry g-1 is the mass of the cell at index gap
// g in [1, R/2] from the center, on either side. Uses the antiderivative
// u^c. Masses on one side sum to 1/2 exactly up to rounding.
std::vector<double> power_cell_masses(double c, std::size_t resolution) {
    const double R = static_cast<double>(resolution);
    const double z = 2.0 * std::pow(0.5, c);
    std::vector<double> mass(resolution / 2);
    double prev = 0.0;
    for (std::size_t g = 1; g <= resolution / 2; ++g) {
        const double cur = std::pow(static_cast<double>(g) / R, c);
        mass[g - 1] = (cur - prev) / z;
        prev = cur;
    }
    return mass;
}

double density_exponent_c(int which, double beta) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("example family must be 1 or 2");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("example families need beta in (0,1)");
    // density |x-1/2|^q with q = (beta-1)/2 (which=1) or beta-1 (which=2);
    // c = q+1 is the antiderivative exponent
    return which == 1 ? (beta + 1.0) / 2.0 : beta;
}

void require_even_resolution(std::size_t resolution) {
    if (resolution < 2 || resolution % 2 != 0)
        throw std::invalid_argument("example resolution must be even and >= 2");
}

// index gap to the nearest opposite-label grid point of the step target
std::size_t label_gap(std::size_t k, std::size_t resolution) {
    const std::size_t half = resolution / 2;
    return k < half ? half - k : k - half + 1;
}

}  // namespace

double example1_avg_slope_limit(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("closed form needs beta in (0,1)");
    return (1.0 + beta) / (1.0 - beta) * std::pow(2.0, beta);
}

Instance example_instance(int which, double beta, std::size_t resolution) {
    require_even_resolution(resolution);
    const double c = density_exponent_c(which, beta);
    const std::vector<double> mass = power_cell_masses(c, resolution);

    const double R = static_cast<double>(resolution);
    std::vector<double> coords(resolution);
    std::vector<double> weights(resolution);
    std::vector<double> f(resolution);
    const std::size_t half = resolution / 2;
    for (std::size_t k = 0; k < resolution; ++k) {
        coords[k] = (static_cast<double>(k) + 0.5) / R;
        weights[k] = mass[label_gap(k, resolution) - 1];
        f[k] = k >= half ? 1.0 : 0.0;
    }

    const double limit = which == 1 ? example1_avg_slope_limit(beta) : kInf;
    return Instance{MetricAccessor::from_coordinates(resolution, 1, std::move(coords)),
                    DiscreteMeasure(std::move(weights)), std::move(f), limit};
}

Instance uniform_grid_instance(std::size_t resolution) {
    if (resolution < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> coords(resolution);
    std::vector<double> f(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        coords[k] = static_cast<double>(k) / static_cast<double>(resolution - 1);
        f[k] = coords[k];
    }
    return Instance{MetricAccessor::from_coordinates(resolution, 1, std::move(coords)),
                    DiscreteMeasure::uniform(resolution), std::move(f),
                    std::numeric_limits<double>::quiet_NaN()};
}

std::vector<SlopeTableRow> example_slope_table(int which, double beta,
                                               const std::vector<std::size_t>& resolutions) {
    const double c = density_exponent_c(which, beta);
    std::vector<SlopeTableRow> table;
    table.reserve(resolutions.size());
    for (std::size_t resolution : resolutions) {
        require_even_resolution(resolution);
        const std::vector<double> mass = power_cell_masses(c, resolution);
        const double R = static_cast<double>(resolution);
        SlopeTableRow row;
        row.resolution = resolution;
        // the step target's slope at a gap-g point is (g/R)^-beta, decreasing
        // in g, so scanning g upward enumerates the weak-mean thresholds in
        // order and the running mass is exactly P(slope >= t)
        double cum = 0.0;
        for (std::size_t g = 1; g <= resolution / 2; ++g) {
            const double m2 = 2.0 * mass[g - 1];
            const double d = static_cast<double>(g) / R;
            cum += m2;
            row.avg_slope += m2 * std::pow(d, -beta);
            row.weak_avg_slope = std::max(row.weak_avg_slope, std::pow(d, -beta) * cum);
            row.lip_weak_avg_slope = std::max(row.lip_weak_avg_slope, cum / d);
        }
        table.push_back(row);
    }
    return table;
}

std::vector<std::size_t> draw_points(const DiscreteMeasure& mu, std::size_t n,
                                     std::uint64_t seed) {
    DiscreteSampler sampler(mu.weights());
    Rng rng(seed);
    std::vector<std::size_t> points(n);
    for (auto& p : points) p = sampler.sample(rng);
    return points;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit fit;
    const std::size_t k = xs.size();
    if (ys.size() != k) throw std::invalid_argument("fit_line: mismatched lengths");
    if (k < 2) return fit;
    for (std::size_t i = 0; i < k; ++i)
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) return fit;

    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(k);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) return fit;

    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.slope_stderr = k >= 3 ? std::sqrt(ss_res / static_cast<double>(k - 2) / sxx)
                              : std::numeric_limits<double>::quiet_NaN();
    fit.defined = true;
    return fit;
}

Instance build_instance(const GeneratorSpec& spec) {
    if (spec.kind == "grid-uniform") return uniform_grid_instance(spec.resolution);
    if (spec.kind == "example1") return example_instance(1, spec.beta, spec.resolution);
    if (spec.kind == "example2") return example_instance(2, spec.beta, spec.resolution);
    if (spec.kind == "lowerbound") {
        Instance grid = uniform_grid_instance(spec.resolution);
        LowerBoundInstance lb =
            lowerbound_instance(grid.space, spec.epsilon, spec.L, spec.beta, spec.seed);
        return Instance{std::move(grid.space), std::move(lb.mu), std::move(lb.f_star),
                        std::numeric_limits<double>::quiet_NaN()};
    }
    throw std::invalid_argument("unknown generator kind: " + spec.kind);
}

LowerBoundDesign lowerbound_design(const MetricAccessor& m, double epsilon, double L,
                                   double beta) {
    require_beta(beta);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("lowerbound needs epsilon in (0,1)");
    if (!(std::isfinite(L) && L > 0.0)) throw std::invalid_argument("lowerbound needs L > 0");
    const std::size_t n = m.size();
    if (n < 2) throw std::invalid_argument("lowerbound needs at least 2 points");

    LowerBoundDesign d;
    // exact diametral pair, first in index order among the maximizers
    std::size_t a = 0, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = m.distance(i, j);
            if (dist > d.diam) {
                d.diam = dist;
                a = i;
                b = j;
            }
        }
    }
    if (!(L >= 8.0 / d.diam))
        throw std::invalid_argument("lowerbound needs L >= 8/diam = " +
                                    std::to_string(8.0 / d.diam));

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    d.packing_radius = std::pow(epsilon / L, 1.0 / beta);
    const Net packing = greedy_net(m, all, d.packing_radius);
    d.packing_size = packing.centers.size();

    const VoronoiPartition split = voronoi_assign(m, {a, b});
    std::size_t count_a = 0;
    for (std::size_t p : packing.centers)
        if (split.owner[p] == 0) ++count_a;
    const std::size_t heavy = count_a * 2 >= d.packing_size ? 0 : 1;
    d.x0 = heavy == 0 ? b : a;

    const std::size_t keep = d.packing_size / 2;
    if (keep == 0)
        throw std::invalid_argument("lowerbound packing too small: " +
                                    std::to_string(d.packing_size) + " points");
    for (std::size_t p : packing.centers) {
        if (d.k_set.size() == keep) break;
        if (split.owner[p] == heavy) d.k_set.push_back(p);
    }
    if (d.k_set.size() < keep)
        throw std::logic_error("heavy cell lost the packing majority");
    for (std::size_t p : d.k_set) {
        if (!(m.distance(d.x0, p) >= d.diam / 4.0))
            throw std::logic_error("far-point separation failed");
    }

    d.mu_weights.assign(n, 0.0);
    d.mu_weights[d.x0] = 1.0 - epsilon / 2.0;
    const double atom = epsilon / 2.0 / static_cast<double>(d.k_set.size());
    for (std::size_t p : d.k_set) d.mu_weights[p] = atom;
    return d;
}

std::vector<double> lowerbound_labels(const LowerBoundDesign& design, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> labels(design.k_set.size());
    for (auto& v : labels) v = rng.next_bool() ? 1.0 : 0.0;
    return labels;
}

LowerBoundInstance lowerbound_instance(const MetricAccessor& m, double epsilon, double L,
                                       double beta, std::uint64_t seed) {
    LowerBoundDesign design = lowerbound_design(m, epsilon, L, beta);
    const std::vector<double> labels = lowerbound_labels(design, seed);

    std::vector<std::size_t> base;
    base.reserve(design.k_set.size() + 1);
    base.push_back(design.x0);
    base.insert(base.end(), design.k_set.begin(), design.k_set.end());
    std::vector<double> values(base.size(), 0.0);
    std::copy(labels.begin(), labels.end(), values.begin() + 1);

    const PmseModel model = pmse_fit(m, base, values, beta);
    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<double> f_star = pmse_extend_all(m, model, all);

    DiscreteMeasure mu(design.mu_weights);
    return LowerBoundInstance{std::move(design), std::move(mu), std::move(f_star)};
}

LowerBoundTrialResult lowerbound_trial(const MetricAccessor& m, double epsilon, double L,
                                       double beta, std::size_t n, std::size_t trials,
                                       std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("lowerbound_trial needs trials >= 1");
    const LowerBoundDesign design = lowerbound_design(m, epsilon, L, beta);
    const DiscreteMeasure mu(design.mu_weights);
    const DiscreteSampler sampler(design.mu_weights);

    // support points and their positions: risk is exact over the support
    std::vector<std::size_t> support;
    support.reserve(design.k_set.size() + 1);
    support.push_back(design.x0);
    support.insert(support.end(), design.k_set.begin(), design.k_set.end());

    LowerBoundTrialResult result;
    result.risks.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::vector<double> labels = lowerbound_labels(design, derive_seed(seed, 2 * t));
        // target values over the support; off-support the target's smooth
        // extension never meets the measure, so the trial skips it
        std::unordered_map<std::size_t, double> target;
        target.reserve(support.size());
        target.emplace(design.x0, 0.0);
        for (std::size_t i = 0; i < design.k_set.size(); ++i)
            target.emplace(design.k_set[i], labels[i]);

        std::vector<double> predicted(support.size(), 0.0);
        if (n > 0) {
            Rng rng(derive_seed(seed, 2 * t + 1));
            LabeledSample train;
            train.points.resize(n);
            train.labels.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                train.points[i] = sampler.sample(rng);
                train.labels[i] = target.at(train.points[i]);
            }
            LearnerConfig cfg;
            cfg.beta = beta;
            cfg.gamma = choose_gamma(epsilon, L);
            cfg.seed = derive_seed(seed, 2 * t + 1);
            const Hypothesis h = learn(m, train, cfg);
            predicted = hypothesis_eval_batch(m, h, support);
        }
        double risk = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i)
            risk += mu.weight(support[i]) * std::abs(predicted[i] - target.at(support[i]));
        result.risks[t] = risk;
    }

    const double k = static_cast<double>(trials);
    result.mean_risk = std::accumulate(result.risks.begin(), result.risks.end(), 0.0) / k;
    if (trials >= 2) {
        double ss = 0.0;
        for (double r : result.risks) ss += (r - result.mean_risk) * (r - result.mean_risk);
        result.std_err = std::sqrt(ss / (k - 1.0) / k);
    }
    return result;
}

SweepResult risk_sweep(const Instance& inst, double beta, const std::vector<std::size_t>& n_grid,
                       std::size_t trials, std::uint64_t seed, std::optional<double> known_scale) {
    require_beta(beta);
    if (n_grid.size() < 4)
        throw std::invalid_argument("risk sweep needs at least 4 sample sizes");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1])
            throw std::invalid_argument("risk sweep sample sizes must increase strictly");
    if (n_grid.front() == 0) throw std::invalid_argument("risk sweep needs positive n");
    if (trials == 0) throw std::invalid_argument("risk sweep needs trials >= 1");

    // accuracy-target scale for the per-n discard budget: the instance's own
    // average slope (exact, the space is finite), floored at 1 so that
    // near-constant targets keep a usable budget; callers that already know
    // the instance's average slope can pass it and skip the quadratic scan
    double scale;
    if (known_scale) {
        scale = *known_scale;
        if (!std::isfinite(scale) || scale < 1.0) scale = 1.0;
    } else {
        const SlopeProfile profile = slope_profile(inst.space, inst.f_values, beta);
        scale = average_slope(profile, inst.mu);
        if (!std::isfinite(scale) || scale < 1.0) scale = 1.0;
    }

    const std::size_t test_n = 10 * n_grid.back();
    SweepResult result;
    result.n_grid = n_grid;
    result.rows.reserve(n_grid.size() * trials);
    result.mean_test_risk.assign(n_grid.size(), 0.0);

    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
        const std::size_t n = n_grid[ni];
        const double eps_n = scale * std::pow(static_cast<double>(n), -beta / (1.0 + beta));
        const double gamma_n = choose_gamma(eps_n, scale);
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t stream = 2 * (ni * trials + t);
            LabeledSample train;
            train.points = draw_points(inst.mu, n, derive_seed(seed, stream));
            train.labels.resize(n);
            for (std::size_t i = 0; i < n; ++i) train.labels[i] = inst.f_values[train.points[i]];

            LearnerConfig cfg;
            cfg.beta = beta;
            cfg.gamma = gamma_n;
            cfg.seed = derive_seed(seed, stream);
            const Hypothesis h = learn(inst.space, train, cfg);

            const InterpolationCheck check = interpolation_check(inst.space, h, train);
            if (check.train_error > check.budget + 1e-12) ++result.interpolation_violations;

            LabeledSample test;
            test.points = draw_points(inst.mu, test_n, derive_seed(seed, stream + 1));
            test.labels.resize(test_n);
            for (std::size_t i = 0; i < test_n; ++i)
                test.labels[i] = inst.f_values[test.points[i]];
            const RiskEstimate estimate = true_risk_estimate(inst.space, h, test);

            result.rows.push_back(SweepRow{n, t, gamma_n, check.train_error, estimate.risk});
            result.mean_test_risk[ni] += estimate.risk / static_cast<double>(trials);
        }
    }

    bool positive = true;
    for (double r : result.mean_test_risk)
        if (!(r > 0.0)) positive = false;
    if (positive) {
        std::vector<double> xs(n_grid.size()), ys(n_grid.size());
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
            xs[i] = std::log(static_cast<double>(n_grid[i]));
            ys[i] = std::log(result.mean_test_risk[i]);
        }
        result.fit = fit_line(xs, ys);
    }
    return result;
}

}  // namespace holder_avg
