#include "holder_avg/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "holder_avg/parallel.hpp"
#include "holder_avg/rng.hpp"
#include "holder_avg/smoothness.hpp"

namespace holder_avg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_sample(const MetricAccessor& m, const LabeledSample& sample) {
    if (sample.points.empty()) throw std::invalid_argument("sample: no entries");
    if (sample.points.size() != sample.labels.size())
        throw std::invalid_argument("sample: points/labels length mismatch");
    for (std::size_t p : sample.points)
        if (p >= m.size()) throw std::invalid_argument("sample: point index out of range");
    for (double y : sample.labels)
        if (!(y >= 0.0 && y <= 1.0))
            throw std::invalid_argument("sample: labels must lie in [0,1]");
}

}  // namespace

double choose_gamma(double epsilon, double L) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("choose_gamma: epsilon must be positive");
    if (!(L >= 0.0) || !std::isfinite(L))
        throw std::invalid_argument("choose_gamma: L must be >= 0");
    return std::min(epsilon / (2.0 * (1.0 + 2.0 * L)), 0.5);
}

Hypothesis learn(const MetricAccessor& m, const LabeledSample& sample, const LearnerConfig& cfg) {
    validate_sample(m, sample);
    require_beta(cfg.beta);

    double gamma;
    if (cfg.gamma) {
        gamma = *cfg.gamma;
        if (!(gamma > 0.0 && gamma < 1.0))
            throw std::invalid_argument("learn: gamma must lie in (0,1)");
    } else if (cfg.epsilon && cfg.L) {
        gamma = choose_gamma(*cfg.epsilon, *cfg.L);
    } else {
        throw std::invalid_argument("learn: config needs gamma or (epsilon, L)");
    }

    const std::size_t n = sample.points.size();
    const std::vector<double> slopes = sample_slopes(m, sample.points, sample.labels, cfg.beta);

    double slope_sum = 0.0;
    bool slope_inf = false;
    for (double s : slopes) {
        if (s == kInf) slope_inf = true;
        else slope_sum += s;
    }
    const double hat_slope = slope_inf ? kInf : slope_sum / static_cast<double>(n);

    // entries ranked worst-first; equal slopes discard the larger position
    const std::size_t n_discard = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n)));
    if (n_discard >= n) throw std::invalid_argument("learn: discard budget leaves no points");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (slopes[a] != slopes[b]) return slopes[a] > slopes[b];
        return a > b;
    });

    std::vector<char> dropped(n, 0);
    std::vector<std::size_t> discarded(order.begin(),
                                       order.begin() + static_cast<std::ptrdiff_t>(n_discard));
    std::sort(discarded.begin(), discarded.end());
    for (std::size_t e : discarded) dropped[e] = 1;

    std::vector<std::size_t> kept_points;
    kept_points.reserve(n - n_discard);
    for (std::size_t e = 0; e < n; ++e)
        if (!dropped[e]) kept_points.push_back(sample.points[e]);

    const double radius = std::pow(gamma, 1.0 / cfg.beta);
    const Net net = greedy_net(m, kept_points, radius);

    // one label per center: the first kept entry that carries the point
    std::unordered_map<std::size_t, double> first_label;
    for (std::size_t e = 0; e < n; ++e)
        if (!dropped[e]) first_label.emplace(sample.points[e], sample.labels[e]);
    std::vector<double> base_values(net.centers.size());
    for (std::size_t c = 0; c < net.centers.size(); ++c) {
        const auto it = first_label.find(net.centers[c]);
        if (it == first_label.end())
            throw std::logic_error("learn: net center without a kept entry");
        base_values[c] = it->second;
    }

    Hypothesis h;
    h.model = pmse_fit(m, net.centers, base_values, cfg.beta);
    h.beta = cfg.beta;
    h.gamma = gamma;
    h.net_radius = radius;
    h.discarded = std::move(discarded);
    h.empirical_slope = hat_slope;
    h.seed = cfg.seed;
    return h;
}

double hypothesis_eval(const MetricAccessor& m, const Hypothesis& h, std::size_t x) {
    return pmse_eval(m, h.model, x);
}

std::vector<double> hypothesis_eval_batch(const MetricAccessor& m, const Hypothesis& h,
                                          const std::vector<std::size_t>& points) {
    return pmse_extend_all(m, h.model, points);
}

double empirical_risk(const MetricAccessor& m, const Hypothesis& h, const LabeledSample& sample) {
    validate_sample(m, sample);
    const std::vector<double> pred = hypothesis_eval_batch(m, h, sample.points);
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::abs(pred[i] - sample.labels[i]);
    return acc / static_cast<double>(pred.size());
}

RiskEstimate true_risk_estimate(const MetricAccessor& m, const Hypothesis& h,
                                const LabeledSample& held_out) {
    return {empirical_risk(m, h, held_out), held_out.points.size()};
}

InterpolationCheck interpolation_check(const MetricAccessor& m, const Hypothesis& h,
                                       const LabeledSample& sample) {
    InterpolationCheck chk;
    chk.train_error = empirical_risk(m, h, sample);
    chk.budget = h.gamma * (1.0 + 2.0 * h.empirical_slope);
    return chk;
}

double sample_size_bound_raw(double beta, double epsilon, double delta,
                             const std::function<double(double)>& covering_fn, double L) {
    require_beta(beta);
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("sample_size_bound: epsilon must lie in (0,1)");
    if (!(epsilon < L)) throw std::invalid_argument("sample_size_bound: requires epsilon < L");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("sample_size_bound: delta must lie in (0,1)");
    const double radius = std::pow(epsilon / (256.0 * L * std::log2(1.0 / epsilon)), 1.0 / beta);
    const double cover = covering_fn(radius);
    if (!(cover >= 1.0))
        throw std::invalid_argument("sample_size_bound: covering_fn must return >= 1");
    return (cover + std::log(1.0 / delta)) / epsilon;
}

long long sample_size_bound(double beta, double epsilon, double delta,
                            const std::function<double(double)>& covering_fn, double L) {
    return static_cast<long long>(std::ceil(sample_size_bound_raw(beta, epsilon, delta,
                                                                  covering_fn, L)));
}

ConcentrationResult slope_concentration_trial(const MetricAccessor& m, const DiscreteMeasure& mu,
                                              const std::vector<double>& f_star, double beta,
                                              std::size_t n, double delta, std::size_t trials,
                                              std::uint64_t seed) {
    require_beta(beta);
    if (mu.size() != m.size()) throw std::invalid_argument("concentration: measure size mismatch");
    if (n == 0 || trials == 0)
        throw std::invalid_argument("concentration: n and trials must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("concentration: delta must lie in (0,1)");

    const SlopeProfile profile = slope_profile(m, f_star, beta);
    const double avg = average_slope(profile, mu);
    const double logterm = std::log(4.0 * static_cast<double>(n) / delta);
    const double bound = 4.0 * logterm * logterm * (avg + 1.0 / static_cast<double>(n));

    const DiscreteSampler sampler(mu.weights());
    ConcentrationResult res;
    res.bound = bound;
    res.avg_slope = avg;
    res.empirical_slopes.assign(trials, 0.0);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng(derive_seed(seed, t));
        std::vector<std::size_t> pts(n);
        std::vector<double> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = sampler.sample(rng);
            labels[i] = f_star[pts[i]];
        }
        res.empirical_slopes[t] = empirical_average_slope(m, pts, labels, beta);
    });

    std::size_t exceed = 0;
    for (double s : res.empirical_slopes)
        if (s > bound) ++exceed;
    res.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(trials);
    return res;
}

}  // namespace holder_avg
