#include "holder_avg/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "holder_avg/parallel.hpp"

namespace holder_avg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_values(const MetricAccessor& m, const std::vector<double>& f) {
    if (f.size() != m.size())
        throw std::invalid_argument("slope: function values must cover every point");
    for (double v : f)
        if (!std::isfinite(v)) throw std::invalid_argument("slope: function values must be finite");
}

void require_measure(const MetricAccessor* m, std::size_t n, const DiscreteMeasure& mu) {
    (void)m;
    if (mu.size() != n)
        throw std::invalid_argument("measure size does not match the profile");
}

}  // namespace

double beta_slope(const MetricAccessor& m, const std::vector<double>& f, std::size_t i,
                  double beta, const std::vector<std::size_t>& reference) {
    require_beta(beta);
    require_values(m, f);
    if (i >= m.size()) throw std::invalid_argument("beta_slope: point index out of range");

    double best = 0.0;
    const double fi = f[i];
    for (std::size_t y : reference) {
        if (y >= m.size()) throw std::invalid_argument("beta_slope: reference index out of range");
        if (y == i) continue;
        const double gap = std::abs(fi - f[y]);
        const double d = m.distance(i, y);
        if (d == 0.0) {
            if (gap == 0.0) continue;  // duplicate observation, no information
            return kInf;
        }
        if (gap == 0.0) continue;
        best = std::max(best, gap / pow_beta(d, beta));
    }
    return best;
}

SlopeProfile slope_profile(const MetricAccessor& m, const std::vector<double>& f, double beta,
                           const std::vector<std::size_t>& reference) {
    require_beta(beta);
    require_values(m, f);
    for (std::size_t y : reference)
        if (y >= m.size())
            throw std::invalid_argument("slope_profile: reference index out of range");

    SlopeProfile profile;
    profile.beta = beta;
    profile.values.assign(m.size(), 0.0);
    parallel_for(m.size(), [&](std::size_t i) {
        double best = 0.0;
        const double fi = f[i];
        for (std::size_t y : reference) {
            if (y == i) continue;
            const double gap = std::abs(fi - f[y]);
            const double d = m.distance(i, y);
            if (d == 0.0) {
                if (gap == 0.0) continue;
                best = kInf;
                break;
            }
            if (gap == 0.0) continue;
            const double s = gap / pow_beta(d, beta);
            if (s > best) best = s;
        }
        profile.values[i] = best;
    });
    return profile;
}

SlopeProfile slope_profile(const MetricAccessor& m, const std::vector<double>& f, double beta) {
    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return slope_profile(m, f, beta, all);
}

double average_slope(const SlopeProfile& profile, const DiscreteMeasure& mu) {
    require_measure(nullptr, profile.values.size(), mu);
    double acc = 0.0;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double w = mu.weight(i);
        if (w == 0.0) continue;  // 0 * inf must not poison the mean
        const double v = profile.values[i];
        if (v == kInf) return kInf;
        acc += w * v;
    }
    return acc;
}

double weak_mean(const std::vector<double>& values, const std::vector<double>& weights) {
    if (values.size() != weights.size())
        throw std::invalid_argument("weak_mean: values/weights length mismatch");
    if (values.empty()) throw std::invalid_argument("weak_mean: empty input");
    double wsum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw std::invalid_argument("weak_mean: values must be finite and >= 0");
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            throw std::invalid_argument("weak_mean: weights must be finite and >= 0");
        wsum += weights[i];
    }
    if (!(wsum > 0.0)) throw std::invalid_argument("weak_mean: total weight is zero");

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    // t * P(Z >= t) maximized over the atom values; the cumulative weight at
    // the last entry of a tie group covers the whole group.
    double best = 0.0;
    double cum = 0.0;
    for (std::size_t k : order) {
        cum += weights[k];
        best = std::max(best, values[k] * (cum / wsum));
    }
    return best;
}

double weak_average_slope(const SlopeProfile& profile, const DiscreteMeasure& mu) {
    require_measure(nullptr, profile.values.size(), mu);
    std::vector<double> vals;
    std::vector<double> wts;
    vals.reserve(profile.values.size());
    wts.reserve(profile.values.size());
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const double w = mu.weight(i);
        if (w == 0.0) continue;
        if (profile.values[i] == kInf) return kInf;
        vals.push_back(profile.values[i]);
        wts.push_back(w);
    }
    if (vals.empty()) throw std::invalid_argument("weak_average_slope: measure has no support");
    return weak_mean(vals, wts);
}

std::vector<double> sample_slopes(const MetricAccessor& m, const std::vector<std::size_t>& points,
                                  const std::vector<double>& labels, double beta) {
    require_beta(beta);
    if (points.empty()) throw std::invalid_argument("sample_slopes: empty sample");
    if (points.size() != labels.size())
        throw std::invalid_argument("sample_slopes: points/labels length mismatch");
    for (std::size_t p : points)
        if (p >= m.size()) throw std::invalid_argument("sample_slopes: point index out of range");
    for (double y : labels)
        if (!std::isfinite(y)) throw std::invalid_argument("sample_slopes: labels must be finite");

    // Collapse repeated (point, label) observations: the sup over sample
    // points is blind to multiplicity.
    std::vector<std::size_t> dpoint;
    std::vector<double> dlabel;
    std::unordered_map<std::size_t, std::vector<std::size_t>> by_point;  // point -> distinct slots
    std::vector<std::size_t> entry_slot(points.size());
    for (std::size_t e = 0; e < points.size(); ++e) {
        auto& slots = by_point[points[e]];
        std::size_t found = SIZE_MAX;
        for (std::size_t s : slots)
            if (dlabel[s] == labels[e]) {
                found = s;
                break;
            }
        if (found == SIZE_MAX) {
            found = dpoint.size();
            dpoint.push_back(points[e]);
            dlabel.push_back(labels[e]);
            slots.push_back(found);
        }
        entry_slot[e] = found;
    }

    const std::size_t k = dpoint.size();
    std::vector<double> slot_slope(k, 0.0);
    parallel_for(k, [&](std::size_t a) {
        double best = 0.0;
        for (std::size_t b = 0; b < k; ++b) {
            if (b == a) continue;
            const double gap = std::abs(dlabel[a] - dlabel[b]);
            const double d = m.distance(dpoint[a], dpoint[b]);
            if (d == 0.0) {
                if (gap == 0.0) continue;
                best = kInf;  // coincident points with conflicting labels
                break;
            }
            if (gap == 0.0) continue;
            const double s = gap / pow_beta(d, beta);
            if (s > best) best = s;
        }
        slot_slope[a] = best;
    });

    std::vector<double> out(points.size());
    for (std::size_t e = 0; e < points.size(); ++e) out[e] = slot_slope[entry_slot[e]];
    return out;
}

double empirical_average_slope(const MetricAccessor& m, const std::vector<std::size_t>& points,
                               const std::vector<double>& labels, double beta) {
    const std::vector<double> slopes = sample_slopes(m, points, labels, beta);
    double acc = 0.0;
    for (double s : slopes) {
        if (s == kInf) return kInf;
        acc += s;
    }
    return acc / static_cast<double>(slopes.size());
}

}  // namespace holder_avg
