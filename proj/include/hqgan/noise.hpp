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
 * Noise channels for the generator circuit: amplitude damping, dephasing,
 * their combination, classical readout confusion, and the noisy-identity
 * insertion schedule derived from gate times.
 */
#pragma once

#include <cstddef>
#include <optional>

#include "hqgan/qsim.hpp"
#include "hqgan/rng.hpp"

namespace hqgan {

/// Which noise sources are switched on.
struct NoiseFlags {
    bool damping{false};
    bool dephasing{false};
    bool readout{false};

    bool operator==(const NoiseFlags &) const = default;
};

/**
 * @brief Device timing and error parameters. Times are in seconds.
 *
 * Defaults are the superconducting-device values used throughout the
 * experiments: T1 = 15 us, T2 = 18 us, 50 ns single-qubit gates, 400 ns CNOT,
 * readout assignment 0.91 for both outcomes.
 */
struct NoiseParams {
    double T1{15e-6};
    double T2{18e-6};
    double t1{50e-9};
    double t2{400e-9};
    double p00{0.91};
    double p11{0.91};
    std::optional<double> override_p_damp;
    std::optional<double> override_p_deph;
    NoiseFlags enabled;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    [[nodiscard]] bool has_slot_channel() const {
        return enabled.damping || enabled.dephasing;
    }

    bool operator==(const NoiseParams &) const = default;
};

/** @brief p = 1 - exp(-t / T1). */
double damping_probability(double t, double T1);

/**
 * @brief p = 1 - exp[-2t (1/T2 - 1/(2 T1))].
 *
 * Rejects T2 > 2 T1, for which the expression would be negative.
 */
double dephasing_probability(double t, double T1, double T2);

/** @brief K1 = diag(1, sqrt(1-p)), K2 = [[0, sqrt(p)], [0, 0]]. */
KrausChannel amplitude_damping_kraus(double p);

/** @brief sqrt(1-p) I, diag(sqrt(p), 0), diag(0, sqrt(p)). */
KrausChannel dephasing_kraus(double p);

/**
 * @brief Products {A_i B_j}. Acting with the result is the same as applying
 * `second` first and then `first`.
 */
KrausChannel combined_kraus(const KrausChannel &first,
                            const KrausChannel &second);

/**
 * @brief Classical assignment noise on one measured bit.
 *
 * A 0 stays 0 with probability p00, a 1 stays 1 with probability p11.
 * Consumes exactly one uniform draw.
 */
int readout_flip(int bit, double p00, double p11, CounterRng &rng);

/// <Z> seen through the assignment matrix: (p00 + p11 - 1) <Z> + (p00 - p11).
double readout_corrected_expectation(double expectation, double p00,
                                     double p11);

/**
 * @brief Number of noisy identity slots that follow `gate`.
 *
 * round(t_gate / t1) with t_gate = t1 for single-qubit gates and t2 for CNOT,
 * never less than 1.
 */
std::size_t noisy_slot_count(const GateOp &gate, const NoiseParams &params);

/**
 * @brief The single-qubit channel applied once per noisy identity slot.
 *
 * Throws std::invalid_argument if neither damping nor dephasing is enabled.
 */
KrausChannel per_slot_channel(const NoiseParams &params);

} // namespace hqgan
