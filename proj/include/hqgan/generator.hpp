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
 * The two-qubit variational generator.
 *
 * Circuit for an input z in [-1, 1]:
 *
 *     q0: RY(asin z) RZ(acos z^2) RY(theta1) --*-- RY(theta3)  -> <Z>
 *     q1: RY(asin z) RZ(acos z^2) RY(theta2) --X--
 *
 * The first two columns are the encoding layers; the rest is the variational
 * block. The generated sample is the Z expectation of qubit 0.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hqgan/noise.hpp"
#include "hqgan/qsim.hpp"
#include "hqgan/rng.hpp"

namespace hqgan {

inline constexpr std::size_t kGeneratorQubits = 2;
inline constexpr std::size_t kGeneratorParams = 3;

struct GeneratorParams {
    std::array<double, kGeneratorParams> theta{};

    /// theta wrapped into [0, 2pi), for logging only.
    [[nodiscard]] GeneratorParams canonical() const;

    bool operator==(const GeneratorParams &) const = default;
};

struct CircuitSpec {
    std::vector<GateOp> gates;
    /// Positions in `gates` of the gates carrying theta1..theta3.
    std::array<std::size_t, kGeneratorParams> trainable{};
    std::size_t encoding_gates{0};
    std::size_t measured_qubit{0};
};

enum class EstimatorMode { Exact, Shots };

struct EstimatorConfig {
    EstimatorMode mode{EstimatorMode::Shots};
    int n_shots{1000};

    void validate() const;

    bool operator==(const EstimatorConfig &) const = default;
};

/** @brief The encoding + variational circuit for one input. */
CircuitSpec build_circuit(double z, const GeneratorParams &params);

/**
 * @brief Generator evaluation under an optional noise model.
 *
 * Holds the per-slot channel and slot counts so they are derived once per
 * run rather than once per circuit. Immutable after construction; safe to
 * share between threads.
 */
class Generator {
  public:
    explicit Generator(std::optional<NoiseParams> noise = std::nullopt);

    [[nodiscard]] const std::optional<NoiseParams> &noise() const {
        return noise_;
    }

    /// Final state of the circuit including noisy identity slots.
    [[nodiscard]] DensityMatrix final_state(double z,
                                            const GeneratorParams &params) const;

    /// <Z> of qubit 0; includes the affine readout correction if enabled.
    [[nodiscard]] double exact_expectation(double z,
                                           const GeneratorParams &params) const;

    /// (n0 - n1) / n_shots from sampled (and possibly readout-flipped) bits.
    [[nodiscard]] double shot_expectation(double z, const GeneratorParams &params,
                                          int n_shots, CounterRng &rng) const;

    /// Dispatches on the estimator mode. Exact mode leaves rng untouched.
    [[nodiscard]] double expectation(double z, const GeneratorParams &params,
                                     const EstimatorConfig &est,
                                     CounterRng &rng) const;

    /**
     * @brief d<Z>/d theta_k by the parameter-shift rule.
     *
     * The six shifted evaluations draw from `rng` in the order
     * (k=0,+), (k=0,-), (k=1,+), ...
     */
    [[nodiscard]] std::array<double, kGeneratorParams>
    param_shift_gradient(double z, const GeneratorParams &params,
                         const EstimatorConfig &est, CounterRng &rng) const;

    /**
     * @brief Elementwise expectation for a batch; element i draws from
     * streams.at(i). Result is independent of `workers`.
     */
    [[nodiscard]] std::vector<double>
    generate_batch(std::span<const double> zs, const GeneratorParams &params,
                   const EstimatorConfig &est, const StreamFamily &streams,
                   unsigned workers = 1) const;

  private:
    std::optional<NoiseParams> noise_;
    std::optional<KrausChannel> slot_channel_;
};

// Free-function forms of the Generator members.

double exact_expectation(double z, const GeneratorParams &params,
                         const std::optional<NoiseParams> &noise);

double shot_expectation(double z, const GeneratorParams &params,
                        const std::optional<NoiseParams> &noise,
                        const EstimatorConfig &est, CounterRng &rng);

std::array<double, kGeneratorParams>
param_shift_gradient(double z, const GeneratorParams &params,
                     const std::optional<NoiseParams> &noise,
                     const EstimatorConfig &est, CounterRng &rng);

std::vector<double> generate_batch(std::span<const double> zs,
                                   const GeneratorParams &params,
                                   const std::optional<NoiseParams> &noise,
                                   const EstimatorConfig &est,
                                   const StreamFamily &streams);

} // namespace hqgan
