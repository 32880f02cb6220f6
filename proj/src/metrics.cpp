// Copyright 2026 The hqgan Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqgan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hqgan {

std::size_t Histogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Histogram histogram(std::span<const double> samples, std::size_t bins) {
    if (samples.empty()) {
        throw std::invalid_argument("histogram of an empty sample");
    }
    if (bins == 0) {
        throw std::invalid_argument("histogram needs at least one bin");
    }
    Histogram h;
    h.bin_count = bins;
    h.counts.assign(bins, 0);
    const auto nb = static_cast<double>(bins);
    for (const double raw : samples) {
        const double x = std::clamp(raw, -1.0, 1.0);
        auto idx = static_cast<std::size_t>(std::floor((x + 1.0) * 0.5 * nb));
        idx = std::min(idx, bins - 1);
        ++h.counts[idx];
    }
    h.probabilities.resize(bins);
    const auto total = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < bins; ++i) {
        h.probabilities[i] = static_cast<double>(h.counts[i]) / total;
    }
    return h;
}

double kl_divergence(const Histogram &p, const Histogram &q, double eps) {
    if (p.bin_count != q.bin_count ||
        p.probabilities.size() != q.probabilities.size()) {
        throw std::invalid_argument("kl_divergence: histogram bins differ");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("kl_divergence: eps must be positive");
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < p.probabilities.size(); ++i) {
        const double pi = p.probabilities[i];
        if (pi > 0.0) {
            kl += pi * std::log((pi + eps) / (q.probabilities[i] + eps));
        }
    }
    return std::max(kl, 0.0);
}

double mean(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("mean of an empty sample");
    }
    return std::accumulate(samples.begin(), samples.end(), 0.0) /
           static_cast<double>(samples.size());
}

double population_std(std::span<const double> samples) {
    const double m = mean(samples);
    double ss = 0.0;
    for (const double x : samples) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(samples.size()));
}

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionSummary summarize(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("summary of an empty sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    DistributionSummary s;
    s.mean = mean(samples);
    s.std = population_std(samples);
    s.q1 = sorted_quantile(sorted, 0.25);
    s.median = sorted_quantile(sorted, 0.5);
    s.q3 = sorted_quantile(sorted, 0.75);
    return s;
}

double grad_norm(std::initializer_list<std::span<const double>> blocks) {
    double ss = 0.0;
    for (const auto block : blocks) {
        for (const double g : block) {
            ss += g * g;
        }
    }
    return std::sqrt(ss);
}

double grad_norm(std::span<const double> values) { return grad_norm({values}); }

} // namespace hqgan
