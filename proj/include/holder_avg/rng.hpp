#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace holder_avg {

// splitmix64, used to derive independent stream seeds from a root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    // two mixing rounds so consecutive stream ids land far apart
    return splitmix64(splitmix64(root ^ 0x6a09e667f3bcc909ULL) + stream);
}

// xoshiro256** by Blackman/Vigna (public domain). Used instead of std::mt19937_64
// so that sampled values are identical across standard libraries; the std::
// distributions are implementation-defined and would break byte-identical reruns.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) {
            s = splitmix64(s);
            w = s;
        }
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below: n must be positive");
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

private:
    std::uint64_t state_[4];
};

// Inverse-CDF sampler over a fixed finite distribution. Weights need not be
// normalized; they must be nonnegative with a positive sum.
class DiscreteSampler {
public:
    explicit DiscreteSampler(const std::vector<double>& weights) {
        if (weights.empty()) throw std::invalid_argument("DiscreteSampler: empty weights");
        cdf_.reserve(weights.size());
        double acc = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("DiscreteSampler: negative weight");
            acc += w;
            cdf_.push_back(acc);
        }
        if (!(acc > 0.0)) throw std::invalid_argument("DiscreteSampler: total weight is zero");
        total_ = acc;
    }

    std::size_t sample(Rng& rng) const {
        const double u = rng.next_double() * total_;
        // first index whose cumulative weight exceeds u
        std::size_t lo = 0, hi = cdf_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf_[mid] > u)
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

private:
    std::vector<double> cdf_;
    double total_ = 0.0;
};

}  // namespace holder_avg
