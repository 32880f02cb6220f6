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
 * JSON persistence for training checkpoints and target datasets.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hqgan/config.hpp"
#include "hqgan/metrics.hpp"
#include "hqgan/training.hpp"

namespace hqgan {

inline constexpr int kCheckpointFormat = 1;
inline constexpr int kTargetFormat = 1;

/**
 * @brief Everything needed to continue a run bit-exactly.
 *
 * Random streams are addressed by (seed, epoch, purpose, index), so the
 * generator state is fully described by the seed and state.epoch.
 */
struct Checkpoint {
    TrainState state;
    std::uint64_t seed{0};
    std::uint64_t fingerprint{0};
    /// Canonical config text of the run.
    std::string config;

    bool operator==(const Checkpoint &) const = default;
};

std::string serialize_checkpoint(const Checkpoint &ckpt);

/// Throws IoError on malformed input or a format_version mismatch.
Checkpoint deserialize_checkpoint(const std::string &text);

/// Writes through a temporary file and renames it into place.
void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint load_checkpoint(const std::filesystem::path &path);

struct TargetFile {
    TargetSpec spec;
    std::vector<double> values;
    DistributionSummary summary;
};

std::string serialize_target(const TargetFile &target);
TargetFile deserialize_target(const std::string &text);

void save_target(const std::filesystem::path &path, const TargetFile &target);
TargetFile load_target(const std::filesystem::path &path);

/// Whole-file helpers; both throw IoError.
std::string read_file(const std::filesystem::path &path);
void write_file_atomic(const std::filesystem::path &path, const std::string &data);

} // namespace hqgan
