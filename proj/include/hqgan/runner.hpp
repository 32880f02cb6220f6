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
 * Command implementations behind the hqgan tool: target generation,
 * training with checkpoints, resuming and report emission.
 *
 * A run directory contains
 *
 *   config.ini       canonical copy of the run's configuration
 *   target.json      the target dataset used for training
 *   metrics.csv      one row per completed epoch plus the epoch-0 row
 *   checkpoint.json  latest checkpoint
 *   .lock            held while a command owns the directory
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hqgan/checkpoint.hpp"
#include "hqgan/config.hpp"
#include "hqgan/training.hpp"

namespace hqgan {

inline constexpr const char *kMetricsHeader =
    "epoch,kl,c_d,c_g,d_grad,g_grad,mean_real,mean_fake,std_real,std_fake,"
    "theta1,theta2,theta3";

/// Samples drawn for initial/final/target distributions in reports.
inline constexpr int kReportSamples = 1000;

/// Report-stream tags.
inline constexpr std::uint32_t kInitialTag = 0;
inline constexpr std::uint32_t kFinalTag = 1;

/// Command-line overrides applied on top of a config.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

/// Fixed-precision CSV row (round-trip exact doubles).
std::string format_metrics_row(const EpochRecord &r);

/// Exclusive advisory lock on DIR/.lock, released on destruction.
class RunLock {
  public:
    explicit RunLock(const std::filesystem::path &dir);
    ~RunLock();
    RunLock(const RunLock &) = delete;
    RunLock &operator=(const RunLock &) = delete;

  private:
    int fd_{-1};
};

/// Builds the target dataset and its summary.
TargetFile build_target(const TargetSpec &spec);

/**
 * @brief Writes the target dataset described by the config to `out`, or to
 * the config's target_path when `out` is empty.
 */
std::filesystem::path cmd_target(const std::filesystem::path &config,
                                 const std::filesystem::path &out,
                                 const Overrides &ov = {});

/**
 * @brief Fresh run into `run_dir`.
 *
 * The target dataset is read from target_path if that file exists and
 * generated from the [target] section otherwise. Returns the final state.
 */
TrainState cmd_train(const std::filesystem::path &config,
                     const std::filesystem::path &run_dir, const Overrides &ov = {},
                     std::ostream *log = nullptr);

/**
 * @brief Continues a run from its checkpoint.
 *
 * `config` may supply a new epoch budget; it must have the same fingerprint
 * as the checkpointed run. Without it the run's config.ini is used.
 */
TrainState cmd_resume(const std::filesystem::path &checkpoint,
                      const std::optional<std::filesystem::path> &config,
                      const Overrides &ov = {}, std::ostream *log = nullptr);

/**
 * @brief Writes DIR/report (or `out`): metrics.csv, initial, final and target
 * distribution CSVs and summary.json.
 */
std::filesystem::path cmd_report(const std::filesystem::path &run_dir,
                                 const std::filesystem::path &out = {},
                                 std::ostream *log = nullptr);

} // namespace hqgan
