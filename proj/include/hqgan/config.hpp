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
 * Run configuration files: a sectioned key = value text format mapped onto
 * TrainConfig plus the target-dataset settings.
 *
 * Sections and keys:
 *
 *   [run]        epochs, n_samples, seed, theta_init, label_smoothing,
 *                metric_sample_count, checkpoint_every, kl_bins, workers,
 *                target_path
 *   [estimator]  mode (exact | shots), n_shots
 *   [optimizer]  lr_d, lr_g, beta1, beta2, eps
 *   [noise]      damping, dephasing, readout (booleans), T1, T2, t1, t2
 *                (seconds), p00, p11, p_damp, p_deph (optional overrides)
 *   [target]     theta_star, n, seed, mode, n_shots
 *
 * Every key is optional. Unknown sections or keys are rejected.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "hqgan/generator.hpp"
#include "hqgan/training.hpp"

namespace hqgan {

/// How the target dataset is produced.
struct TargetSpec {
    GeneratorParams theta_star{{0.35, 2.10, 5.06}};
    int n{1000};
    std::uint64_t seed{1234};
    EstimatorConfig estimator;

    void validate() const;

    bool operator==(const TargetSpec &) const = default;
};

struct RunConfig {
    TrainConfig train;
    TargetSpec target;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Parses and validates config text. Throws ConfigError.
RunConfig parse_config(const std::string &text);

/**
 * @brief Reads and parses a config file.
 *
 * A relative target_path is resolved against the file's directory.
 * Throws IoError if the file cannot be read.
 */
RunConfig load_config(const std::filesystem::path &path);

/// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const RunConfig &cfg);

/**
 * @brief 64-bit FNV-1a hash of everything that determines a run's results.
 *
 * Covers the canonical config minus epochs, checkpoint_every, workers and
 * target_path, plus the target values themselves.
 */
std::uint64_t fingerprint(const RunConfig &cfg, std::span<const double> target);

/// Shortest text that reads back as the same double.
std::string format_double(double v);

std::uint64_t fnv1a(std::span<const unsigned char> bytes,
                    std::uint64_t hash = 0xcbf29ce484222325ULL);

} // namespace hqgan
