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

#include "hqgan/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hqgan {

namespace {

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(p));
    }
}

void check_positive(double value, const char *name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
}

} // namespace

void NoiseParams::validate() const {
    check_positive(T1, "T1");
    check_positive(T2, "T2");
    check_positive(t1, "t1");
    check_positive(t2, "t2");
    if (T2 > 2.0 * T1) {
        throw std::invalid_argument("T2 must not exceed 2*T1");
    }
    check_probability(p00, "p00");
    check_probability(p11, "p11");
    if (override_p_damp) {
        check_probability(*override_p_damp, "override_p_damp");
    }
    if (override_p_deph) {
        check_probability(*override_p_deph, "override_p_deph");
    }
}

double damping_probability(double t, double T1) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("gate time must be non-negative");
    }
    check_positive(T1, "T1");
    return -std::expm1(-t / T1);
}

double dephasing_probability(double t, double T1, double T2) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("gate time must be non-negative");
    }
    check_positive(T1, "T1");
    check_positive(T2, "T2");
    if (T2 > 2.0 * T1) {
        throw std::invalid_argument("T2 must not exceed 2*T1");
    }
    return -std::expm1(-2.0 * t * (1.0 / T2 - 1.0 / (2.0 * T1)));
}

KrausChannel amplitude_damping_kraus(double p) {
    check_probability(p, "damping probability");
    Matrix2c k1;
    k1 << 1.0, 0.0, 0.0, std::sqrt(1.0 - p);
    Matrix2c k2;
    k2 << 0.0, std::sqrt(p), 0.0, 0.0;
    return {{k1, k2}, "amplitude_damping"};
}

KrausChannel dephasing_kraus(double p) {
    check_probability(p, "dephasing probability");
    const double keep = std::sqrt(1.0 - p);
    const double jump = std::sqrt(p);
    Matrix2c k1;
    k1 << keep, 0.0, 0.0, keep;
    Matrix2c k2;
    k2 << jump, 0.0, 0.0, 0.0;
    Matrix2c k3;
    k3 << 0.0, 0.0, 0.0, jump;
    return {{k1, k2, k3}, "dephasing"};
}

KrausChannel combined_kraus(const KrausChannel &first,
                            const KrausChannel &second) {
    for (const auto *ch : {&first, &second}) {
        if (ch->operators.empty() || completeness_error(*ch) > 1e-10) {
            throw std::invalid_argument("channel '" + ch->label +
                                        "' violates completeness");
        }
    }
    KrausChannel out;
    out.label = first.label + "*" + second.label;
    out.operators.reserve(first.operators.size() * second.operators.size());
    for (const auto &a : first.operators) {
        for (const auto &b : second.operators) {
            out.operators.emplace_back(a * b);
        }
    }
    return out;
}

int readout_flip(int bit, double p00, double p11, CounterRng &rng) {
    const double u = rng.uniform();
    if (bit == 0) {
        return u < p00 ? 0 : 1;
    }
    return u < p11 ? 1 : 0;
}

double readout_corrected_expectation(double expectation, double p00,
                                     double p11) {
    return (p00 + p11 - 1.0) * expectation + (p00 - p11);
}

std::size_t noisy_slot_count(const GateOp &gate, const NoiseParams &params) {
    const double t_gate = gate.is_two_qubit() ? params.t2 : params.t1;
    const auto n = static_cast<long>(std::lround(t_gate / params.t1));
    return n < 1 ? 1 : static_cast<std::size_t>(n);
}

KrausChannel per_slot_channel(const NoiseParams &params) {
    if (!params.has_slot_channel()) {
        throw std::invalid_argument(
            "per-slot channel needs damping or dephasing enabled");
    }
    const double p_damp =
        params.override_p_damp.value_or(damping_probability(params.t1, params.T1));
    const double p_deph = params.override_p_deph.value_or(
        dephasing_probability(params.t1, params.T1, params.T2));
    if (params.enabled.damping && params.enabled.dephasing) {
        return combined_kraus(amplitude_damping_kraus(p_damp),
                              dephasing_kraus(p_deph));
    }
    if (params.enabled.damping) {
        return amplitude_damping_kraus(p_damp);
    }
    return dephasing_kraus(p_deph);
}

} // namespace hqgan
