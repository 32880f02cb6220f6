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

/**
 * @file
 * Distribution diagnostics: fixed-range histograms, smoothed KL divergence,
 * moments and quartiles, gradient norms.
 */
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hqgan {

inline constexpr std::size_t kDefaultBins = 20;
inline constexpr double kDefaultKlEps = 1e-10;

/// Uniform bins over [-1, 1]; the last bin is closed on the right.
struct Histogram {
    std::size_t bin_count{0};
    std::vector<std::size_t> counts;
    std::vector<double> probabilities;

    [[nodiscard]] std::size_t total() const;
};

/// Samples outside [-1, 1] are clamped into the edge bins.
Histogram histogram(std::span<const double> samples,
                    std::size_t bins = kDefaultBins);

/**
 * @brief sum_i p_i log((p_i + eps) / (q_i + eps)), clamped at 0 from below.
 */
double kl_divergence(const Histogram &p, const Histogram &q,
                     double eps = kDefaultKlEps);

struct DistributionSummary {
    double mean{0.0};
    /// Population standard deviation.
    double std{0.0};
    double median{0.0};
    double q1{0.0};
    double q3{0.0};
};

/// Quantiles use linear interpolation at position q * (n - 1).
DistributionSummary summarize(std::span<const double> samples);

double mean(std::span<const double> samples);
/// Population standard deviation, two-pass.
double population_std(std::span<const double> samples);
/// Linear-interpolated quantile of an already sorted sample.
double sorted_quantile(std::span<const double> sorted, double q);

/// Euclidean norm over all entries of all blocks.
double grad_norm(std::initializer_list<std::span<const double>> blocks);
double grad_norm(std::span<const double> values);

} // namespace hqgan
