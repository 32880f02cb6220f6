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

#include "hqgan/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "hqgan/error.hpp"
#include "hqgan/parallel.hpp"

namespace hqgan {

namespace {

void require(bool ok, const std::string &field, const std::string &what) {
    if (!ok) {
        throw ConfigError(field + ": " + what);
    }
}

std::vector<double> draw_prior(const StreamFamily &streams, int n) {
    std::vector<double> zs(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < zs.size(); ++i) {
        CounterRng rng = streams.at(static_cast<std::uint32_t>(i));
        zs[i] = rng.uniform(-1.0, 1.0);
    }
    return zs;
}

std::vector<double> draw_with_replacement(std::span<const double> pool,
                                          const StreamFamily &streams, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const auto size = static_cast<double>(pool.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        CounterRng rng = streams.at(static_cast<std::uint32_t>(i));
        const auto idx = std::min(static_cast<std::size_t>(rng.uniform() * size),
                                  pool.size() - 1);
        out[i] = pool[idx];
    }
    return out;
}

std::vector<double> evaluate(const MlpParams &disc, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    std::transform(xs.begin(), xs.end(), out.begin(),
                   [&disc](double x) { return clamp_probability(forward(disc, x)); });
    return out;
}

bool finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

void check_domain(std::span<const double> values, const char *name) {
    for (const double d : values) {
        if (!(d > 0.0 && d < 1.0)) {
            throw std::domain_error(std::string(name) +
                                    " values must lie in (0, 1)");
        }
    }
}

} // namespace

void TrainConfig::validate() const {
    require(epochs >= 0, "epochs", "must be non-negative");
    require(n_samples >= 1, "n_samples", "must be at least 1");
    require(estimator.mode == EstimatorMode::Exact || estimator.n_shots >= 1,
            "n_shots", "must be at least 1");
    require(label_smoothing > 0.0 && label_smoothing <= 1.0, "label_smoothing",
            "must lie in (0, 1]");
    require(lr_d >= 0.0 && std::isfinite(lr_d), "lr_d", "must be non-negative");
    require(lr_g >= 0.0 && std::isfinite(lr_g), "lr_g", "must be non-negative");
    require(adam_beta1 >= 0.0 && adam_beta1 < 1.0, "adam_beta1",
            "must lie in [0, 1)");
    require(adam_beta2 >= 0.0 && adam_beta2 < 1.0, "adam_beta2",
            "must lie in [0, 1)");
    require(adam_eps > 0.0, "adam_eps", "must be positive");
    require(metric_sample_count >= 1, "metric_sample_count", "must be at least 1");
    require(checkpoint_every >= 1, "checkpoint_every", "must be at least 1");
    require(kl_bins >= 1, "kl_bins", "must be at least 1");
    require(std::all_of(theta_init.theta.begin(), theta_init.theta.end(),
                        [](double t) { return std::isfinite(t); }),
            "theta_init", "must be finite");
    if (noise) {
        try {
            noise->validate();
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("noise.") + e.what());
        }
    }
}

TrainState initial_state(const TrainConfig &cfg) {
    TrainState s;
    s.epoch = 0;
    s.theta = cfg.theta_init;
    s.disc = init_mlp(cfg.seed);
    s.disc_adam = AdamState(MlpParams::kSize,
                            {cfg.lr_d, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps});
    s.gen_adam = AdamState(kGeneratorParams,
                           {cfg.lr_g, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps});
    return s;
}

std::vector<double> make_target(const GeneratorParams &theta_star, int n,
                                const EstimatorConfig &est, std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("target size must be at least 1");
    }
    est.validate();
    const std::vector<double> zs =
        draw_prior(StreamFamily{seed, 0, Purpose::TargetPrior}, n);
    const Generator noiseless;
    return noiseless.generate_batch(zs, theta_star, est,
                                    StreamFamily{seed, 0, Purpose::TargetShots});
}

double clamp_probability(double d) {
    return std::clamp(d, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

double discriminator_loss(std::span<const double> d_real,
                          std::span<const double> d_fake, double smoothing) {
    if (d_real.empty() || d_fake.empty()) {
        throw std::invalid_argument("discriminator_loss needs samples");
    }
    check_domain(d_real, "d_real");
    check_domain(d_fake, "d_fake");
    double real_term = 0.0;
    for (const double d : d_real) {
        real_term += smoothing * std::log(d);
    }
    double fake_term = 0.0;
    for (const double d : d_fake) {
        fake_term += std::log1p(-d);
    }
    return -(real_term / static_cast<double>(d_real.size()) +
             fake_term / static_cast<double>(d_fake.size()));
}

double generator_loss(std::span<const double> d_fake) {
    if (d_fake.empty()) {
        throw std::invalid_argument("generator_loss needs samples");
    }
    check_domain(d_fake, "d_fake");
    double sum = 0.0;
    for (const double d : d_fake) {
        sum += std::log(d);
    }
    return -sum / static_cast<double>(d_fake.size());
}

DiscriminatorStep discriminator_loss_gradient(const MlpParams &disc,
                                              std::span<const double> real,
                                              std::span<const double> fake,
                                              double smoothing) {
    DiscriminatorStep step;
    const std::vector<double> d_real = evaluate(disc, real);
    const std::vector<double> d_fake = evaluate(disc, fake);
    step.loss = discriminator_loss(d_real, d_fake, smoothing);
    const auto n_real = static_cast<double>(real.size());
    const auto n_fake = static_cast<double>(fake.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
        backward_accumulate(disc, real[i], -smoothing / (n_real * d_real[i]),
                            step.grad);
    }
    for (std::size_t i = 0; i < fake.size(); ++i) {
        backward_accumulate(disc, fake[i], 1.0 / (n_fake * (1.0 - d_fake[i])),
                            step.grad);
    }
    return step;
}

GeneratorStep generator_loss_gradient(const Generator &gen, const MlpParams &disc,
                                      std::span<const double> zs,
                                      std::span<const double> fakes,
                                      const GeneratorParams &theta,
                                      const EstimatorConfig &est,
                                      const StreamFamily &shift_streams,
                                      unsigned workers) {
    if (zs.size() != fakes.size() || zs.empty()) {
        throw std::invalid_argument("generator_loss_gradient: batch mismatch");
    }
    const std::size_t n = zs.size();
    std::vector<std::array<double, kGeneratorParams>> dx(n);
    parallel_for(n, workers, [&](std::size_t i) {
        CounterRng rng = shift_streams.at(static_cast<std::uint32_t>(i));
        dx[i] = gen.param_shift_gradient(zs[i], theta, est, rng);
    });

    GeneratorStep step;
    std::vector<double> d_fake(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = clamp_probability(forward(disc, fakes[i]));
        d_fake[i] = d;
        const double dd_dx = input_gradient(disc, fakes[i]);
        const double coeff = -dd_dx / (d * static_cast<double>(n));
        for (std::size_t k = 0; k < kGeneratorParams; ++k) {
            step.grad[k] += coeff * dx[i][k];
        }
    }
    step.loss = generator_loss(d_fake);
    return step;
}

Trainer::Trainer(TrainConfig cfg, std::vector<double> target)
    : Trainer(cfg, std::move(target), initial_state(cfg)) {}

Trainer::Trainer(TrainConfig cfg, std::vector<double> target, TrainState state)
    : cfg_(std::move(cfg)), target_(std::move(target)), gen_(cfg_.noise),
      state_(std::move(state)) {
    cfg_.validate();
    if (target_.empty()) {
        throw ConfigError("target: dataset is empty");
    }
    if (state_.disc_adam.m.size() != MlpParams::kSize ||
        state_.gen_adam.m.size() != kGeneratorParams) {
        throw std::invalid_argument("optimizer state does not match parameters");
    }
}

Trainer::Batch Trainer::draw_batch(std::uint32_t epoch, int n, Purpose prior,
                                   Purpose pick, Purpose shots) const {
    Batch b;
    b.zs = draw_prior(StreamFamily{cfg_.seed, epoch, prior}, n);
    b.real = draw_with_replacement(target_, StreamFamily{cfg_.seed, epoch, pick}, n);
    b.fake = gen_.generate_batch(b.zs, state_.theta, cfg_.estimator,
                                 StreamFamily{cfg_.seed, epoch, shots},
                                 cfg_.workers);
    return b;
}

EpochRecord Trainer::metrics_record(std::uint32_t epoch, double d_norm,
                                    double g_norm) const {
    const Batch b = draw_batch(epoch, cfg_.metric_sample_count, Purpose::MetricPrior,
                               Purpose::MetricPick, Purpose::MetricShots);
    const std::vector<double> d_real = evaluate(state_.disc, b.real);
    const std::vector<double> d_fake = evaluate(state_.disc, b.fake);

    EpochRecord r;
    r.epoch = state_.epoch;
    r.kl = kl_divergence(histogram(b.real, cfg_.kl_bins),
                         histogram(b.fake, cfg_.kl_bins));
    r.c_d = discriminator_loss(d_real, d_fake, cfg_.label_smoothing);
    r.c_g = generator_loss(d_fake);
    r.d_grad_norm = d_norm;
    r.g_grad_norm = g_norm;
    r.mean_real = mean(b.real);
    r.mean_fake = mean(b.fake);
    r.std_real = population_std(b.real);
    r.std_fake = population_std(b.fake);
    r.theta = state_.theta;
    return r;
}

EpochRecord Trainer::snapshot_record() const {
    // Gradient norms come from the metric batch since no update has run.
    const auto epoch = static_cast<std::uint32_t>(state_.epoch);
    const Batch b = draw_batch(epoch, cfg_.metric_sample_count, Purpose::MetricPrior,
                               Purpose::MetricPick, Purpose::MetricShots);
    const DiscriminatorStep ds =
        discriminator_loss_gradient(state_.disc, b.real, b.fake, cfg_.label_smoothing);
    const GeneratorStep gs = generator_loss_gradient(
        gen_, state_.disc, b.zs, b.fake, state_.theta, cfg_.estimator,
        StreamFamily{cfg_.seed, epoch, Purpose::ShiftShots}, cfg_.workers);
    return metrics_record(epoch, grad_norm(ds.grad.values()), grad_norm(gs.grad));
}

EpochRecord Trainer::train_epoch() {
    const int next = state_.epoch + 1;
    const auto epoch = static_cast<std::uint32_t>(next);
    TrainState updated = state_;

    const Batch b = draw_batch(epoch, cfg_.n_samples, Purpose::TrainPrior,
                               Purpose::TrainPick, Purpose::TrainShots);

    DiscriminatorStep ds;
    GeneratorStep gs;
    try {
        ds = discriminator_loss_gradient(updated.disc, b.real, b.fake,
                                         cfg_.label_smoothing);
        adam_step(updated.disc.values(), ds.grad.values(), updated.disc_adam);

        gs = generator_loss_gradient(
            gen_, updated.disc, b.zs, b.fake, updated.theta, cfg_.estimator,
            StreamFamily{cfg_.seed, epoch, Purpose::ShiftShots}, cfg_.workers);
        adam_step(updated.theta.theta, gs.grad, updated.gen_adam);
    } catch (const std::domain_error &e) {
        // A NaN discriminator output fails the loss domain check.
        throw NumericalError("epoch " + std::to_string(next) + ": " + e.what());
    }

    if (!updated.disc.all_finite() || !finite(updated.theta.theta) ||
        !std::isfinite(ds.loss) || !std::isfinite(gs.loss)) {
        throw NumericalError("non-finite value during epoch " +
                             std::to_string(next));
    }
    updated.epoch = next;

    const TrainState previous = std::exchange(state_, std::move(updated));
    try {
        return metrics_record(epoch, grad_norm(ds.grad.values()),
                              grad_norm(gs.grad));
    } catch (...) {
        state_ = previous;
        throw;
    }
}

std::vector<double> Trainer::sample(int n, std::uint32_t tag) const {
    return sample_generator(gen_, state_.theta, cfg_.estimator, n, cfg_.seed, tag,
                            cfg_.workers);
}

TrainResult train(Trainer &trainer, const EpochObserver &observer) {
    TrainResult result;
    auto emit = [&](const EpochRecord &r) {
        result.records.push_back(r);
        if (observer) {
            observer(r, trainer);
        }
    };
    if (trainer.state().epoch == 0) {
        emit(trainer.snapshot_record());
    }
    while (trainer.state().epoch < trainer.config().epochs) {
        emit(trainer.train_epoch());
    }
    result.state = trainer.state();
    return result;
}

TrainResult train(const TrainConfig &cfg, std::vector<double> target,
                  const EpochObserver &observer) {
    Trainer trainer(cfg, std::move(target));
    return train(trainer, observer);
}

std::vector<double> sample_generator(const Generator &gen,
                                     const GeneratorParams &theta,
                                     const EstimatorConfig &est, int n,
                                     std::uint64_t seed, std::uint32_t tag,
                                     unsigned workers) {
    const std::vector<double> zs =
        draw_prior(StreamFamily{seed, tag, Purpose::ReportPrior}, n);
    return gen.generate_batch(zs, theta, est,
                              StreamFamily{seed, tag, Purpose::ReportShots}, workers);
}

} // namespace hqgan
