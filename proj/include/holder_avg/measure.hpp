#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace holder_avg {

// Probability weights over the points of a space, by index.
class DiscreteMeasure {
public:
    explicit DiscreteMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw std::invalid_argument("measure: no atoms");
        double sum = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw std::invalid_argument("measure: weights must be finite and >= 0");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("measure: weights sum to " + std::to_string(sum) +
                                        ", expected 1");
    }

    static DiscreteMeasure uniform(std::size_t n) {
        if (n == 0) throw std::invalid_argument("measure: no atoms");
        return DiscreteMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> weights_;
};

}  // namespace holder_avg
