#include "holder_avg/pmse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "holder_avg/parallel.hpp"

namespace holder_avg {

namespace {

constexpr double kTieRel = 1e-12;       // relative band treated as an exact tie
constexpr std::size_t kScanCutoff = 64; // pair scan up to this base size

struct PairChoice {
    std::size_t u = 0;
    std::size_t v = 0;
    double ratio = 0.0;
};

// Scratch buffers shared across evaluations so the batch path does not pay
// one allocation set per query.
struct EvalScratch {
    std::vector<double> dist;
    std::vector<double> g;
    std::vector<std::size_t> us, vs;
};

// Reference maximizer: global maximum of R over all ordered pairs, then the
// lexicographically smallest pair within the tie band of that maximum.
PairChoice max_pair_scan(const std::vector<double>& f, const std::vector<double>& g) {
    const std::size_t k = f.size();
    double rmax = -std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            if (v == u) continue;
            const double r = (f[v] - f[u]) / (g[u] + g[v]);
            if (r > rmax) rmax = r;
        }
    const double lo = rmax - kTieRel * std::abs(rmax);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            if (v == u) continue;
            const double r = (f[v] - f[u]) / (g[u] + g[v]);
            if (r >= lo) return {u, v, r};
        }
    throw std::logic_error("pmse: maximizer scan found no pair");
}

// max_j of f[j] - lambda*g[j] and of -f[j] - lambda*g[j], with four
// independent accumulators per side so the reductions pipeline.
void side_maxima(const std::vector<double>& f, const std::vector<double>& g, double lambda,
                 double& pbest, double& qbest) {
    const std::size_t k = f.size();
    const double* fp = f.data();
    const double* gp = g.data();
    double p0 = -std::numeric_limits<double>::infinity(), p1 = p0, p2 = p0, p3 = p0;
    double q0 = p0, q1 = p0, q2 = p0, q3 = p0;
    std::size_t j = 0;
    for (; j + 4 <= k; j += 4) {
        const double s0 = lambda * gp[j], s1 = lambda * gp[j + 1];
        const double s2 = lambda * gp[j + 2], s3 = lambda * gp[j + 3];
        p0 = std::max(p0, fp[j] - s0);
        p1 = std::max(p1, fp[j + 1] - s1);
        p2 = std::max(p2, fp[j + 2] - s2);
        p3 = std::max(p3, fp[j + 3] - s3);
        q0 = std::max(q0, -fp[j] - s0);
        q1 = std::max(q1, -fp[j + 1] - s1);
        q2 = std::max(q2, -fp[j + 2] - s2);
        q3 = std::max(q3, -fp[j + 3] - s3);
    }
    for (; j < k; ++j) {
        const double s = lambda * gp[j];
        p0 = std::max(p0, fp[j] - s);
        q0 = std::max(q0, -fp[j] - s);
    }
    pbest = std::max(std::max(p0, p1), std::max(p2, p3));
    qbest = std::max(std::max(q0, q1), std::max(q2, q3));
}

// First indices attaining the side maxima. The recomputed expressions match
// side_maxima element for element, so equality recovery is exact; the guard
// below keeps the result correct even if a compiler contracts one copy.
void side_argmax(const std::vector<double>& f, const std::vector<double>& g, double lambda,
                 double pbest, double qbest, std::size_t& pv, std::size_t& qu) {
    const std::size_t k = f.size();
    bool have_p = false, have_q = false;
    for (std::size_t j = 0; j < k && !(have_p && have_q); ++j) {
        const double s = lambda * g[j];
        if (!have_p && f[j] - s == pbest) {
            pv = j;
            have_p = true;
        }
        if (!have_q && -f[j] - s == qbest) {
            qu = j;
            have_q = true;
        }
    }
    if (!have_p || !have_q) {
        double pb = -std::numeric_limits<double>::infinity(), qb = pb;
        for (std::size_t j = 0; j < k; ++j) {
            const double s = lambda * g[j];
            if (f[j] - s > pb) {
                pb = f[j] - s;
                if (!have_p) pv = j;
            }
            if (-f[j] - s > qb) {
                qb = -f[j] - s;
                if (!have_q) qu = j;
            }
        }
    }
}

// Dinkelbach-style iteration. The maximum of (f(v)-f(u))/(g(u)+g(v)) is the
// unique lambda with max_v(f(v)-lambda g(v)) + max_u(-f(u)-lambda g(u)) = 0;
// iterating the linearized argmax pair converges to it monotonically, and on
// exit lambda both equals some pair's ratio (computed with the scan's exact
// arithmetic) and upper-bounds every pair, so it IS the scan's maximum. The
// selection pass then reproduces the reference tie rule over the candidate
// band. If the iteration cap is ever hit without that certificate, fall back
// to the full scan.
PairChoice max_pair_iterative(const std::vector<double>& f, const std::vector<double>& g,
                              EvalScratch& scratch) {
    const std::size_t k = f.size();
    std::size_t u0 = 0, v0 = 0;
    for (std::size_t j = 1; j < k; ++j) {
        if (f[j] < f[u0]) u0 = j;
        if (f[j] > f[v0]) v0 = j;
    }
    double lambda = (f[v0] - f[u0]) / (g[u0] + g[v0]);  // > 0: values not all equal

    bool certified = false;
    for (int iter = 0; iter < 128; ++iter) {
        double pbest, qbest;
        side_maxima(f, g, lambda, pbest, qbest);
        std::size_t pv = 0, qu = 0;
        side_argmax(f, g, lambda, pbest, qbest, pv, qu);
        if (pv == qu) {
            // the two linear maxima meet in one point; the improving pair, if
            // any, pairs that point with the runner-up of the other side
            double alt_p = -std::numeric_limits<double>::infinity();
            double alt_q = alt_p;
            std::size_t pv2 = pv, qu2 = qu;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == pv) continue;
                const double s = lambda * g[j];
                const double p = f[j] - s;
                const double q = -f[j] - s;
                if (p > alt_p) {
                    alt_p = p;
                    pv2 = j;
                }
                if (q > alt_q) {
                    alt_q = q;
                    qu2 = j;
                }
            }
            const double r1 = (f[pv2] - f[qu]) / (g[qu] + g[pv2]);
            const double r2 = (f[pv] - f[qu2]) / (g[qu2] + g[pv]);
            const double next = std::max(r1, r2);
            if (!(next > lambda)) {
                certified = true;
                break;
            }
            lambda = next;
            continue;
        }
        const double next = (f[pv] - f[qu]) / (g[qu] + g[pv]);
        if (!(next > lambda)) {
            certified = true;
            break;
        }
        lambda = next;
    }
    if (!certified) return max_pair_scan(f, g);

    // Candidate band: every pair within the tie tolerance of lambda satisfies
    // s(v) + t(u) <= tol * lambda * (g[u]+g[v]) at the fixpoint; widen with an
    // absolute cushion for rounding and collect per-side supersets.
    double pmaxv, qmaxv;
    side_maxima(f, g, lambda, pmaxv, qmaxv);
    double gmax = 0.0;
    for (std::size_t j = 0; j < k; ++j) gmax = std::max(gmax, g[j]);
    const double spread = std::max(pmaxv + qmaxv, 0.0);
    const double tau = spread + (kTieRel + 1e-9) * std::abs(lambda) * 2.0 * gmax + 1e-300;

    std::vector<std::size_t>& us = scratch.us;
    std::vector<std::size_t>& vs = scratch.vs;
    us.clear();
    vs.clear();
    for (std::size_t j = 0; j < k; ++j) {
        const double s = lambda * g[j];
        if (qmaxv - (-f[j] - s) <= tau) us.push_back(j);
        if (pmaxv - (f[j] - s) <= tau) vs.push_back(j);
    }

    // lambda is the exact pair maximum, so the selection scan can stop at the
    // first band pair inside the tie tolerance: that is the lexicographically
    // smallest qualifying pair, exactly what the reference scan returns.
    const double lo = lambda - kTieRel * std::abs(lambda);
    for (std::size_t u : us)
        for (std::size_t v : vs) {
            if (v == u) continue;
            const double r = (f[v] - f[u]) / (g[u] + g[v]);
            if (r >= lo) return {u, v, r};
        }
    throw std::logic_error("pmse: iterative maximizer found no pair");
}

double eval_core(const PmseModel& model, const double* distances, PmseEvalPath path,
                 EvalScratch& scratch) {
    const std::size_t k = model.base.size();
    if (model.degenerate) return model.values[0];

    for (std::size_t j = 0; j < k; ++j) {
        if (!(distances[j] >= 0.0))
            throw std::invalid_argument("pmse_eval_at: distances must be >= 0");
        if (distances[j] == 0.0) return model.values[j];  // on a base point
    }

    scratch.g.resize(k);
    std::vector<double>& g = scratch.g;
    if (model.beta == 1.0) {
        std::copy(distances, distances + k, g.begin());
    } else if (model.beta == 0.5) {
        for (std::size_t j = 0; j < k; ++j) g[j] = std::sqrt(distances[j]);
    } else {
        for (std::size_t j = 0; j < k; ++j) g[j] = std::pow(distances[j], model.beta);
    }

    PairChoice choice;
    switch (path) {
        case PmseEvalPath::kPairScan:
            choice = max_pair_scan(model.values, g);
            break;
        case PmseEvalPath::kIterative:
            choice = max_pair_iterative(model.values, g, scratch);
            break;
        case PmseEvalPath::kAuto:
        default:
            choice = k <= kScanCutoff ? max_pair_scan(model.values, g)
                                      : max_pair_iterative(model.values, g, scratch);
            break;
    }
    return model.values[choice.u] + choice.ratio * g[choice.u];
}

}  // namespace

PmseModel pmse_fit(const MetricAccessor& m, const std::vector<std::size_t>& base,
                   const std::vector<double>& values, double beta) {
    require_beta(beta);
    if (base.empty()) throw std::invalid_argument("pmse_fit: empty base");
    if (base.size() != values.size())
        throw std::invalid_argument("pmse_fit: base/values length mismatch");
    for (std::size_t idx : base)
        if (idx >= m.size()) throw std::invalid_argument("pmse_fit: base index out of range");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("pmse_fit: values must lie in [0,1]");

    // zero-distance pairs can only exist in a pseudometric space
    if (m.is_pseudometric()) {
        for (std::size_t a = 0; a < base.size(); ++a)
            for (std::size_t b = a + 1; b < base.size(); ++b)
                if (m.distance(base[a], base[b]) == 0.0 && values[a] != values[b])
                    throw std::runtime_error(
                        "pmse_fit: base points at distance 0 carry different values; "
                        "no extension exists");
    }

    PmseModel model;
    model.beta = beta;
    model.base = base;
    model.values = values;
    model.degenerate =
        std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; });
    return model;
}

double pmse_eval_at(const PmseModel& model, const std::vector<double>& distances,
                    PmseEvalPath path) {
    if (distances.size() != model.base.size())
        throw std::invalid_argument("pmse_eval_at: expected one distance per base point");
    EvalScratch scratch;
    return eval_core(model, distances.data(), path, scratch);
}

double pmse_eval(const MetricAccessor& m, const PmseModel& model, std::size_t x,
                 PmseEvalPath path) {
    if (x >= m.size()) throw std::invalid_argument("pmse_eval: point index out of range");
    EvalScratch scratch;
    scratch.dist.resize(model.base.size());
    m.distances_to(x, model.base, scratch.dist.data());
    return eval_core(model, scratch.dist.data(), path, scratch);
}

std::vector<double> pmse_extend_all(const MetricAccessor& m, const PmseModel& model,
                                    const std::vector<std::size_t>& targets, PmseEvalPath path) {
    for (std::size_t t : targets)
        if (t >= m.size()) throw std::invalid_argument("pmse_extend_all: index out of range");

    // evaluate each distinct target once
    std::vector<std::size_t> distinct(targets);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> vals(distinct.size());
    const std::size_t chunks =
        std::min<std::size_t>(std::max<std::size_t>(thread_budget(), 1), distinct.size());
    parallel_for(chunks, [&](std::size_t c) {
        EvalScratch scratch;
        scratch.dist.resize(model.base.size());
        const std::size_t begin = distinct.size() * c / chunks;
        const std::size_t end = distinct.size() * (c + 1) / chunks;
        for (std::size_t i = begin; i < end; ++i) {
            m.distances_to(distinct[i], model.base, scratch.dist.data());
            vals[i] = eval_core(model, scratch.dist.data(), path, scratch);
        }
    });

    std::vector<double> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), targets[i]) - distinct.begin());
        out[i] = vals[pos];
    }
    return out;
}

}  // namespace holder_avg
