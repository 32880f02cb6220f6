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

#include "hqgan/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hqgan/parallel.hpp"

namespace hqgan {

namespace {
constexpr double kShift = std::numbers::pi / 2;
} // namespace

GeneratorParams GeneratorParams::canonical() const {
    GeneratorParams out;
    constexpr double two_pi = 2 * std::numbers::pi;
    for (std::size_t k = 0; k < kGeneratorParams; ++k) {
        double wrapped = std::fmod(theta[k], two_pi);
        if (wrapped < 0) {
            wrapped += two_pi;
        }
        out.theta[k] = wrapped;
    }
    return out;
}

void EstimatorConfig::validate() const {
    if (mode == EstimatorMode::Shots && n_shots < 1) {
        throw std::invalid_argument("n_shots must be at least 1");
    }
}

CircuitSpec build_circuit(double z, const GeneratorParams &params) {
    if (!(std::abs(z) <= 1.0)) {
        throw std::invalid_argument("generator input z must lie in [-1, 1]");
    }
    const double zc = std::clamp(z, -1.0, 1.0);
    const double encode_y = std::asin(zc);
    const double encode_z = std::acos(std::clamp(zc * zc, -1.0, 1.0));

    CircuitSpec spec;
    spec.gates = {
        GateOp::ry(0, encode_y),        GateOp::ry(1, encode_y),
        GateOp::rz(0, encode_z),        GateOp::rz(1, encode_z),
        GateOp::ry(0, params.theta[0]), GateOp::ry(1, params.theta[1]),
        GateOp::cnot(0, 1),             GateOp::ry(0, params.theta[2]),
    };
    spec.encoding_gates = 4;
    spec.trainable = {4, 5, 7};
    spec.measured_qubit = 0;
    return spec;
}

Generator::Generator(std::optional<NoiseParams> noise) : noise_(std::move(noise)) {
    if (noise_) {
        noise_->validate();
        if (noise_->has_slot_channel()) {
            slot_channel_ = per_slot_channel(*noise_);
        }
    }
}

DensityMatrix Generator::final_state(double z, const GeneratorParams &params) const {
    const CircuitSpec circuit = build_circuit(z, params);
    DensityMatrix rho = ground_state(kGeneratorQubits);
    for (const auto &gate : circuit.gates) {
        apply_unitary_inplace(rho, gate);
        if (!slot_channel_) {
            continue;
        }
        const std::size_t slots = noisy_slot_count(gate, *noise_);
        for (const std::size_t qubit : gate.targets) {
            for (std::size_t s = 0; s < slots; ++s) {
                apply_channel_inplace(rho, *slot_channel_, qubit);
            }
        }
    }
    return rho;
}

double Generator::exact_expectation(double z, const GeneratorParams &params) const {
    const double value = expectation_z(final_state(z, params), 0);
    if (noise_ && noise_->enabled.readout) {
        return readout_corrected_expectation(value, noise_->p00, noise_->p11);
    }
    return value;
}

double Generator::shot_expectation(double z, const GeneratorParams &params,
                                   int n_shots, CounterRng &rng) const {
    if (n_shots < 1) {
        throw std::invalid_argument("n_shots must be at least 1");
    }
    const DensityMatrix rho = final_state(z, params);
    const bool readout = noise_ && noise_->enabled.readout;
    long zeros = 0;
    for (int shot = 0; shot < n_shots; ++shot) {
        int bit = sample_z(rho, 0, rng);
        if (readout) {
            bit = readout_flip(bit, noise_->p00, noise_->p11, rng);
        }
        zeros += bit == 0 ? 1 : 0;
    }
    return static_cast<double>(2 * zeros - n_shots) / n_shots;
}

double Generator::expectation(double z, const GeneratorParams &params,
                              const EstimatorConfig &est, CounterRng &rng) const {
    if (est.mode == EstimatorMode::Exact) {
        return exact_expectation(z, params);
    }
    return shot_expectation(z, params, est.n_shots, rng);
}

std::array<double, kGeneratorParams>
Generator::param_shift_gradient(double z, const GeneratorParams &params,
                                const EstimatorConfig &est, CounterRng &rng) const {
    std::array<double, kGeneratorParams> grad{};
    for (std::size_t k = 0; k < kGeneratorParams; ++k) {
        GeneratorParams plus = params;
        GeneratorParams minus = params;
        plus.theta[k] += kShift;
        minus.theta[k] -= kShift;
        const double e_plus = expectation(z, plus, est, rng);
        const double e_minus = expectation(z, minus, est, rng);
        grad[k] = 0.5 * (e_plus - e_minus);
    }
    return grad;
}

std::vector<double> Generator::generate_batch(std::span<const double> zs,
                                              const GeneratorParams &params,
                                              const EstimatorConfig &est,
                                              const StreamFamily &streams,
                                              unsigned workers) const {
    if (zs.empty()) {
        throw std::invalid_argument("generate_batch needs at least one input");
    }
    std::vector<double> out(zs.size());
    parallel_for(zs.size(), workers, [&](std::size_t i) {
        CounterRng rng = streams.at(static_cast<std::uint32_t>(i));
        out[i] = expectation(zs[i], params, est, rng);
    });
    return out;
}

double exact_expectation(double z, const GeneratorParams &params,
                         const std::optional<NoiseParams> &noise) {
    return Generator(noise).exact_expectation(z, params);
}

double shot_expectation(double z, const GeneratorParams &params,
                        const std::optional<NoiseParams> &noise,
                        const EstimatorConfig &est, CounterRng &rng) {
    if (est.mode != EstimatorMode::Shots) {
        throw std::invalid_argument("shot_expectation needs shots mode");
    }
    return Generator(noise).shot_expectation(z, params, est.n_shots, rng);
}

std::array<double, kGeneratorParams>
param_shift_gradient(double z, const GeneratorParams &params,
                     const std::optional<NoiseParams> &noise,
                     const EstimatorConfig &est, CounterRng &rng) {
    return Generator(noise).param_shift_gradient(z, params, est, rng);
}

std::vector<double> generate_batch(std::span<const double> zs,
                                   const GeneratorParams &params,
                                   const std::optional<NoiseParams> &noise,
                                   const EstimatorConfig &est,
                                   const StreamFamily &streams) {
    return Generator(noise).generate_batch(zs, params, est, streams);
}

} // namespace hqgan
