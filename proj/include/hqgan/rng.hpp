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
 * Counter-based random streams (Philox4x32-10).
 *
 * Every random draw in a run is addressed by (seed, epoch, purpose, index,
 * sub) plus a block counter. Streams are therefore independent of the order
 * in which they are consumed, so per-sample work can be fanned out across
 * threads and still produce bit-identical results, and the only state a
 * checkpoint needs to persist is the seed and the epoch.
 */
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hqgan {

/** @brief One Philox4x32 block function evaluation with 10 rounds. */
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Tags separating the streams used by different parts of a run.
enum class Purpose : std::uint32_t {
    TargetPrior = 1,
    TargetShots,
    DiscriminatorInit,
    TrainPrior,
    TrainPick,
    TrainShots,
    ShiftShots,
    MetricPrior,
    MetricPick,
    MetricShots,
    ReportPrior,
    ReportShots,
    Test = 0xFFFF,
};

struct StreamId {
    std::uint32_t epoch{0};
    Purpose purpose{Purpose::Test};
    std::uint32_t index{0};
    std::uint16_t sub{0};

    bool operator==(const StreamId &) const = default;
};

/**
 * @brief A single addressable random stream.
 *
 * Satisfies UniformRandomBitGenerator so it can drive std distributions,
 * but the library itself only uses uniform().
 */
class CounterRng {
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, StreamId id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] const StreamId &id() const { return id_; }
    /// Number of 64-bit words consumed so far.
    [[nodiscard]] std::uint64_t position() const { return position_; }

  private:
    void refill();

    std::uint64_t seed_;
    StreamId id_;
    std::uint32_t block_{0};
    std::uint64_t position_{0};
    std::array<std::uint32_t, 4> buffer_{};
    int lane_{4};
};

/**
 * @brief All streams for one (seed, epoch, purpose) triple.
 *
 * at(i) hands out the stream for batch element i.
 */
struct StreamFamily {
    std::uint64_t seed{0};
    std::uint32_t epoch{0};
    Purpose purpose{Purpose::Test};

    [[nodiscard]] CounterRng at(std::uint32_t index,
                                std::uint16_t sub = 0) const {
        return CounterRng(seed, StreamId{epoch, purpose, index, sub});
    }
};

} // namespace hqgan
