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
 * Adversarial training loop: target generation, losses, alternating
 * discriminator / generator updates and per-epoch metrics.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hqgan/discriminator.hpp"
#include "hqgan/generator.hpp"
#include "hqgan/metrics.hpp"
#include "hqgan/noise.hpp"

namespace hqgan {

/// Smallest distance of a discriminator output from 0 or 1 before logs.
inline constexpr double kProbabilityFloor = 1e-7;

struct TrainConfig {
    int epochs{4500};
    int n_samples{100};
    EstimatorConfig estimator;
    std::optional<NoiseParams> noise;
    double label_smoothing{0.9};
    double lr_d{1e-2};
    double lr_g{1e-3};
    double adam_beta1{0.9};
    double adam_beta2{0.999};
    double adam_eps{1e-8};
    std::uint64_t seed{1234};
    GeneratorParams theta_init{{0.31, 1.89, 4.56}};
    std::string target_path{"target.json"};
    int metric_sample_count{100};
    int checkpoint_every{100};
    std::size_t kl_bins{kDefaultBins};
    /// Threads for per-sample generator work. Does not affect results.
    unsigned workers{1};

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

struct EpochRecord {
    int epoch{0};
    double kl{0.0};
    double c_d{0.0};
    double c_g{0.0};
    double d_grad_norm{0.0};
    double g_grad_norm{0.0};
    double mean_real{0.0};
    double mean_fake{0.0};
    double std_real{0.0};
    double std_fake{0.0};
    GeneratorParams theta;

    bool operator==(const EpochRecord &) const = default;
};

/// Everything that evolves during training.
struct TrainState {
    int epoch{0};
    GeneratorParams theta;
    MlpParams disc;
    AdamState disc_adam;
    AdamState gen_adam;

    bool operator==(const TrainState &) const = default;
};

/** @brief Fresh state: theta_init, Glorot discriminator, zeroed moments. */
TrainState initial_state(const TrainConfig &cfg);

/**
 * @brief n noiseless generator outputs at theta_star for z ~ U(-1, 1).
 */
std::vector<double> make_target(const GeneratorParams &theta_star, int n,
                                const EstimatorConfig &est, std::uint64_t seed);

/// Clamps into [kProbabilityFloor, 1 - kProbabilityFloor].
double clamp_probability(double d);

/**
 * @brief L_D = -[mean(s log d_real) + mean(log(1 - d_fake))].
 *
 * Throws std::domain_error if any value is outside (0, 1).
 */
double discriminator_loss(std::span<const double> d_real,
                          std::span<const double> d_fake, double smoothing);

/** @brief L_G = -mean(log d_fake). */
double generator_loss(std::span<const double> d_fake);

struct DiscriminatorStep {
    double loss{0.0};
    MlpGradient grad;
};

/// L_D and its gradient over the discriminator parameters.
DiscriminatorStep discriminator_loss_gradient(const MlpParams &disc,
                                              std::span<const double> real,
                                              std::span<const double> fake,
                                              double smoothing);

struct GeneratorStep {
    double loss{0.0};
    std::array<double, kGeneratorParams> grad{};
};

/**
 * @brief L_G over fixed generated samples and its theta gradient,
 * chaining dL/dD, dD/dx and the parameter-shift dx/dtheta.
 *
 * `fakes[i]` must be the generator output for `zs[i]`; sample i's shifted
 * evaluations draw from shift_streams.at(i).
 */
GeneratorStep generator_loss_gradient(const Generator &gen, const MlpParams &disc,
                                      std::span<const double> zs,
                                      std::span<const double> fakes,
                                      const GeneratorParams &theta,
                                      const EstimatorConfig &est,
                                      const StreamFamily &shift_streams,
                                      unsigned workers = 1);

/**
 * @brief Stateful driver for one run.
 */
class Trainer {
  public:
    Trainer(TrainConfig cfg, std::vector<double> target);
    Trainer(TrainConfig cfg, std::vector<double> target, TrainState state);

    [[nodiscard]] const TrainState &state() const { return state_; }
    [[nodiscard]] const TrainConfig &config() const { return cfg_; }
    [[nodiscard]] const Generator &generator() const { return gen_; }
    [[nodiscard]] const std::vector<double> &target() const { return target_; }

    /// Metrics of the current state without updating it (the epoch-0 row).
    [[nodiscard]] EpochRecord snapshot_record() const;

    /**
     * @brief One discriminator step then one generator step.
     *
     * Throws NumericalError if any parameter or loss becomes non-finite; the
     * state is left as it was before the call.
     */
    EpochRecord train_epoch();

    /**
     * @brief n generator outputs at the current theta with this run's noise
     * and estimator, on streams tagged `tag`.
     */
    [[nodiscard]] std::vector<double> sample(int n, std::uint32_t tag) const;

  private:
    struct Batch {
        std::vector<double> zs;
        std::vector<double> real;
        std::vector<double> fake;
    };
    [[nodiscard]] Batch draw_batch(std::uint32_t epoch, int n, Purpose prior,
                                   Purpose pick, Purpose shots) const;
    [[nodiscard]] EpochRecord metrics_record(std::uint32_t epoch, double d_norm,
                                             double g_norm) const;

    TrainConfig cfg_;
    std::vector<double> target_;
    Generator gen_;
    TrainState state_;
};

using EpochObserver = std::function<void(const EpochRecord &, const Trainer &)>;

struct TrainResult {
    TrainState state;
    std::vector<EpochRecord> records;
};

/**
 * @brief Runs epochs until state.epoch == cfg.epochs.
 *
 * For a fresh trainer (epoch 0) the snapshot record is emitted first.
 * `observer` sees every record after it is produced.
 */
TrainResult train(Trainer &trainer, const EpochObserver &observer = {});

/// Fresh run from a config and target dataset.
TrainResult train(const TrainConfig &cfg, std::vector<double> target,
                  const EpochObserver &observer = {});

/// Generator outputs for `n` fresh prior draws on report streams.
std::vector<double> sample_generator(const Generator &gen,
                                     const GeneratorParams &theta,
                                     const EstimatorConfig &est, int n,
                                     std::uint64_t seed, std::uint32_t tag,
                                     unsigned workers = 1);

} // namespace hqgan
