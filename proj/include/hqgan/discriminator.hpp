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
 * Classical discriminator: a 1 -> 50 -> 50 -> 1 fully connected network with
 * ELU, ELU, sigmoid activations, plus the Adam optimizer used for both
 * players.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace hqgan {

inline constexpr std::size_t kHidden = 50;

/**
 * @brief Network weights in one flat buffer.
 *
 * Layout: W1 (50x1), b1 (50), W2 (50x50, column-major), b2 (50),
 * W3 (1x50), b3 (1). The same layout is used for gradients.
 */
class MlpParams {
  public:
    static constexpr std::size_t kW1 = 0;
    static constexpr std::size_t kB1 = kW1 + kHidden;
    static constexpr std::size_t kW2 = kB1 + kHidden;
    static constexpr std::size_t kB2 = kW2 + kHidden * kHidden;
    static constexpr std::size_t kW3 = kB2 + kHidden;
    static constexpr std::size_t kB3 = kW3 + kHidden;
    static constexpr std::size_t kSize = kB3 + 1;

    MlpParams() : values_(kSize, 0.0) {}
    explicit MlpParams(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }

    using VectorMap = Eigen::Map<Eigen::VectorXd>;
    using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;
    using MatrixMap = Eigen::Map<Eigen::MatrixXd>;
    using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;

    ConstVectorMap w1() const { return vec(kW1, kHidden); }
    ConstVectorMap b1() const { return vec(kB1, kHidden); }
    ConstMatrixMap w2() const {
        return ConstMatrixMap(values_.data() + kW2, kHidden, kHidden);
    }
    ConstVectorMap b2() const { return vec(kB2, kHidden); }
    ConstVectorMap w3() const { return vec(kW3, kHidden); }
    [[nodiscard]] double b3() const { return values_[kB3]; }

    VectorMap w1() { return vec(kW1, kHidden); }
    VectorMap b1() { return vec(kB1, kHidden); }
    MatrixMap w2() { return MatrixMap(values_.data() + kW2, kHidden, kHidden); }
    VectorMap b2() { return vec(kB2, kHidden); }
    VectorMap w3() { return vec(kW3, kHidden); }
    double &b3() { return values_[kB3]; }

    [[nodiscard]] bool all_finite() const;

    bool operator==(const MlpParams &) const = default;

  private:
    [[nodiscard]] ConstVectorMap vec(std::size_t offset, std::size_t n) const {
        return ConstVectorMap(values_.data() + offset, static_cast<Eigen::Index>(n));
    }
    VectorMap vec(std::size_t offset, std::size_t n) {
        return VectorMap(values_.data() + offset, static_cast<Eigen::Index>(n));
    }

    std::vector<double> values_;
};

using MlpGradient = MlpParams;

/// Glorot-uniform weights, zero biases; deterministic per seed.
MlpParams init_mlp(std::uint64_t seed);

double elu(double u);
double sigmoid(double u);

/** @brief D(x) in (0, 1). */
double forward(const MlpParams &params, double x);

struct BackwardResult {
    MlpGradient params;
    double input{0.0};
};

/**
 * @brief Gradients of upstream * D(x) with respect to every parameter and x.
 */
BackwardResult backward(const MlpParams &params, double x, double upstream);

/// dD/dx only.
double input_gradient(const MlpParams &params, double x);

/// Accumulating form used by batch training: grad += d(upstream*D)/dparams.
double backward_accumulate(const MlpParams &params, double x, double upstream,
                           MlpGradient &grad);

struct AdamHyper {
    double lr{1e-3};
    double beta1{0.9};
    double beta2{0.999};
    double eps{1e-8};

    bool operator==(const AdamHyper &) const = default;
};

/**
 * @brief Adam moments for a flat parameter vector.
 */
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t t{0};
    AdamHyper hyper;

    AdamState() = default;
    AdamState(std::size_t n, AdamHyper h) : m(n, 0.0), v(n, 0.0), hyper(h) {}

    bool operator==(const AdamState &) const = default;
};

/**
 * @brief One Adam update of `params` in place.
 *
 * Throws std::invalid_argument on size mismatch.
 */
void adam_step(std::span<double> params, std::span<const double> grad,
               AdamState &state);

} // namespace hqgan
