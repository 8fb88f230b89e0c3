#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "holder_avg/measure.hpp"
#include "holder_avg/metric_space.hpp"
#include "holder_avg/rng.hpp"
#include "holder_avg/smoothness.hpp"

using namespace holder_avg;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MetricAccessor line_space(const std::vector<double>& xs) {
    return MetricAccessor::from_coordinates(xs.size(), 1, xs);
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

double harmonic(std::size_t n) {
    double h = 0.0;
    for (std::size_t k = 1; k <= n; ++k) h += 1.0 / static_cast<double>(k);
    return h;
}

}  // namespace

TEST_CASE("local slope on a two point space") {
    MetricAccessor m = line_space({0.0, 0.25});
    std::vector<double> f = {0.0, 1.0};
    const auto ref = all_indices(2);
    // |1-0| / 0.25^0.5 = 2
    CHECK(beta_slope(m, f, 0, 0.5, ref) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(beta_slope(m, f, 1, 0.5, ref) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(beta_slope(m, f, 0, 1.0, ref) == doctest::Approx(4.0).epsilon(1e-15));
    // reference without the opposite point: no candidates, slope 0
    CHECK(beta_slope(m, f, 0, 0.5, {0}) == 0.0);
}

TEST_CASE("coincident points: equal values are skipped, conflicts blow up") {
    MetricAccessor m = line_space({0.0, 0.0, 1.0});
    const auto ref = all_indices(3);

    std::vector<double> agree = {0.4, 0.4, 1.0};
    CHECK(beta_slope(m, agree, 0, 1.0, ref) == doctest::Approx(0.6).epsilon(1e-15));

    std::vector<double> clash = {0.4, 0.9, 1.0};
    CHECK(beta_slope(m, clash, 0, 1.0, ref) == kInf);

    SlopeProfile prof = slope_profile(m, clash, 1.0);
    CHECK(prof.values[0] == kInf);
    CHECK(prof.values[1] == kInf);
    CHECK(std::isfinite(prof.values[2]));
}

TEST_CASE("slope profile matches pointwise slopes") {
    Rng rng(5150);
    const std::size_t n = 25;
    std::vector<double> xs(n), f(n);
    for (auto& x : xs) x = rng.next_double();
    for (auto& v : f) v = rng.next_double();
    MetricAccessor m = line_space(xs);
    for (double beta : {0.3, 0.5, 1.0}) {
        SlopeProfile prof = slope_profile(m, f, beta);
        REQUIRE(prof.values.size() == n);
        const auto ref = all_indices(n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(prof.values[i] == beta_slope(m, f, i, beta, ref));
    }
}

TEST_CASE("weak mean of simple atom sets") {
    // values 1,2 with equal weight: sup_t t*P(Z>=t) = max(1*1, 2*0.5) = 1
    CHECK(weak_mean({1.0, 2.0}, {0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    // values 1,2,3 uniform: candidates 1*1, 2*(2/3), 3*(1/3) -> 4/3
    CHECK(weak_mean({1.0, 2.0, 3.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    // a single atom: weak mean equals the value
    CHECK(weak_mean({0.7}, {1.0}) == doctest::Approx(0.7).epsilon(1e-15));
    // all zero
    CHECK(weak_mean({0.0, 0.0}, {0.5, 0.5}) == 0.0);
    // the raw statistic insists on finite values; infinity handling belongs
    // to the slope wrappers
    CHECK_THROWS_AS(weak_mean({kInf, 2.0}, {0.5, 0.5}), std::invalid_argument);
    // zero-weight infinity is invisible, positive-weight infinity dominates
    SlopeProfile prof;
    prof.values = {kInf, 2.0};
    CHECK(weak_average_slope(prof, DiscreteMeasure({0.0, 1.0})) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(weak_average_slope(prof, DiscreteMeasure({0.5, 0.5})) == kInf);
}

TEST_CASE("weak mean never exceeds the mean") {
    Rng rng(99);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t n = 1 + rng.next_below(20);
        std::vector<double> z(n), w(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = 4.0 * rng.next_double();
            w[i] = 0.01 + rng.next_double();
            total += w[i];
        }
        for (auto& wi : w) wi /= total;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += w[i] * z[i];
        CHECK(weak_mean(z, w) <= mean + 1e-12);
    }
}

TEST_CASE("mean is at most the harmonic number times the weak mean for uniform atoms") {
    Rng rng(314159);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u, 33u, 64u}) {
        const double hn = harmonic(n);
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<double> z(n);
            for (auto& v : z) v = 10.0 * rng.next_double();
            std::vector<double> w(n, 1.0 / static_cast<double>(n));
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += w[i] * z[i];
            const double wm = weak_mean(z, w);
            CHECK(mean <= hn * wm + 1e-12);
        }
    }
}

TEST_CASE("weak average slope is between nothing and the average slope") {
    Rng rng(2718);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 3 + rng.next_below(30);
        std::vector<double> xs(n), f(n), w(n);
        for (auto& x : xs) x = rng.next_double();
        for (auto& v : f) v = rng.next_double();
        double total = 0.0;
        for (auto& wi : w) {
            wi = 0.05 + rng.next_double();
            total += wi;
        }
        for (auto& wi : w) wi /= total;
        MetricAccessor m = line_space(xs);
        DiscreteMeasure mu{w};
        SlopeProfile prof = slope_profile(m, f, 0.5);
        const double avg = average_slope(prof, mu);
        const double weak = weak_average_slope(prof, mu);
        const double worst = *std::max_element(prof.values.begin(), prof.values.end());
        CHECK(weak <= avg + 1e-12);
        CHECK(avg <= worst + 1e-12);
    }
}

TEST_CASE("slopes scale linearly with the function") {
    Rng rng(31);
    const std::size_t n = 15;
    std::vector<double> xs(n), f(n);
    for (auto& x : xs) x = rng.next_double();
    for (auto& v : f) v = rng.next_double();
    MetricAccessor m = line_space(xs);
    std::vector<double> half(n);
    for (std::size_t i = 0; i < n; ++i) half[i] = 0.5 * f[i];
    SlopeProfile a = slope_profile(m, f, 0.5);
    SlopeProfile b = slope_profile(m, half, 0.5);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(b.values[i] == doctest::Approx(0.5 * a.values[i]).epsilon(1e-12));
}

TEST_CASE("on spaces with distances at least one, slopes shrink as the exponent grows") {
    Rng rng(404);
    const std::size_t n = 12;
    std::vector<double> xs(n), f(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = 1.5 * static_cast<double>(i);  // spacing >= 1
    for (auto& v : f) v = rng.next_double();
    MetricAccessor m = line_space(xs);
    SlopeProfile s03 = slope_profile(m, f, 0.3);
    SlopeProfile s05 = slope_profile(m, f, 0.5);
    SlopeProfile s10 = slope_profile(m, f, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(s05.values[i] <= s03.values[i] + 1e-12);
        CHECK(s10.values[i] <= s05.values[i] + 1e-12);
    }
}

TEST_CASE("average slope infinity rules") {
    MetricAccessor m = line_space({0.0, 0.0, 1.0});
    std::vector<double> clash = {0.2, 0.8, 0.5};
    SlopeProfile prof = slope_profile(m, clash, 1.0);
    // positive weight on an infinite entry
    CHECK(average_slope(prof, DiscreteMeasure::uniform(3)) == kInf);
    CHECK(weak_average_slope(prof, DiscreteMeasure::uniform(3)) == kInf);
    // zero weight on both infinite entries: finite result driven by index 2
    DiscreteMeasure mu({0.0, 0.0, 1.0});
    CHECK(std::isfinite(average_slope(prof, mu)));
    CHECK(average_slope(prof, mu) == prof.values[2]);
}

TEST_CASE("sample slopes agree with subset slope profiles") {
    Rng rng(87);
    const std::size_t n = 30;
    std::vector<double> xs(n), f(n);
    for (auto& x : xs) x = rng.next_double();
    for (auto& v : f) v = rng.next_double();
    MetricAccessor m = line_space(xs);

    // distinct sample points: per-entry slope equals beta_slope within the set
    std::vector<std::size_t> pts = {2, 5, 9, 17, 28};
    std::vector<double> labels;
    for (std::size_t p : pts) labels.push_back(f[p]);
    std::vector<double> slopes = sample_slopes(m, pts, labels, 0.5);
    REQUIRE(slopes.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> g(n, 0.0);
        for (std::size_t j = 0; j < pts.size(); ++j) g[pts[j]] = labels[j];
        CHECK(slopes[i] == doctest::Approx(beta_slope(m, g, pts[i], 0.5, pts)).epsilon(1e-15));
    }

    const double mean = std::accumulate(slopes.begin(), slopes.end(), 0.0) /
                        static_cast<double>(slopes.size());
    CHECK(empirical_average_slope(m, pts, labels, 0.5) == doctest::Approx(mean).epsilon(1e-14));
}

TEST_CASE("repeated sample points share one slope, conflicting labels are infinite") {
    MetricAccessor m = line_space({0.0, 0.5, 1.0});
    std::vector<std::size_t> pts = {0, 0, 2};
    std::vector<double> same = {0.3, 0.3, 0.9};
    std::vector<double> slopes = sample_slopes(m, pts, same, 1.0);
    CHECK(slopes[0] == slopes[1]);
    CHECK(slopes[0] == doctest::Approx(0.6).epsilon(1e-15));

    std::vector<double> clash = {0.3, 0.4, 0.9};
    std::vector<double> s2 = sample_slopes(m, pts, clash, 1.0);
    CHECK(s2[0] == kInf);
    CHECK(s2[1] == kInf);
    CHECK(std::isfinite(s2[2]));

    // single entry: nothing to compare against
    CHECK(sample_slopes(m, {1}, {0.5}, 1.0)[0] == 0.0);
}
