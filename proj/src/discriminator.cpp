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

#include "hqgan/discriminator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hqgan/rng.hpp"

namespace hqgan {

MlpParams::MlpParams(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() != kSize) {
        throw std::invalid_argument("discriminator parameter vector has size " +
                                    std::to_string(values_.size()) + ", expected " +
                                    std::to_string(kSize));
    }
}

bool MlpParams::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

MlpParams init_mlp(std::uint64_t seed) {
    MlpParams p;
    CounterRng rng(seed, StreamId{0, Purpose::DiscriminatorInit, 0, 0});
    auto fill = [&rng](auto block, double fan_in, double fan_out) {
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        for (Eigen::Index i = 0; i < block.size(); ++i) {
            block.data()[i] = rng.uniform(-limit, limit);
        }
    };
    fill(p.w1(), 1, kHidden);
    fill(p.w2(), kHidden, kHidden);
    fill(p.w3(), kHidden, 1);
    return p;
}

double elu(double u) { return u >= 0.0 ? u : std::expm1(u); }

double sigmoid(double u) {
    if (u >= 0.0) {
        return 1.0 / (1.0 + std::exp(-u));
    }
    const double e = std::exp(u);
    return e / (1.0 + e);
}

namespace {

struct Activations {
    Eigen::Matrix<double, kHidden, 1> pre1;
    Eigen::Matrix<double, kHidden, 1> h1;
    Eigen::Matrix<double, kHidden, 1> pre2;
    Eigen::Matrix<double, kHidden, 1> h2;
    double out{0.0};
};

Activations run_forward(const MlpParams &p, double x) {
    Activations a;
    a.pre1 = p.w1() * x + p.b1();
    a.h1 = a.pre1.unaryExpr(&elu);
    a.pre2.noalias() = p.w2() * a.h1;
    a.pre2 += p.b2();
    a.h2 = a.pre2.unaryExpr(&elu);
    a.out = sigmoid(p.w3().dot(a.h2) + p.b3());
    return a;
}

// elu'(u) = 1 for u >= 0, e^u otherwise (= elu(u) + 1).
double elu_slope(double u) { return u >= 0.0 ? 1.0 : std::exp(u); }

} // namespace

double forward(const MlpParams &params, double x) {
    return run_forward(params, x).out;
}

double backward_accumulate(const MlpParams &params, double x, double upstream,
                           MlpGradient &grad) {
    const Activations a = run_forward(params, x);
    const double d_out = upstream * a.out * (1.0 - a.out);

    grad.w3() += d_out * a.h2;
    grad.b3() += d_out;

    const Eigen::Matrix<double, kHidden, 1> d_pre2 =
        (d_out * params.w3()).cwiseProduct(a.pre2.unaryExpr(&elu_slope));
    grad.w2().noalias() += d_pre2 * a.h1.transpose();
    grad.b2() += d_pre2;

    const Eigen::Matrix<double, kHidden, 1> d_pre1 =
        (params.w2().transpose() * d_pre2).cwiseProduct(a.pre1.unaryExpr(&elu_slope));
    grad.w1() += d_pre1 * x;
    grad.b1() += d_pre1;

    return params.w1().dot(d_pre1);
}

double input_gradient(const MlpParams &params, double x) {
    const Activations a = run_forward(params, x);
    const double d_out = a.out * (1.0 - a.out);
    const Eigen::Matrix<double, kHidden, 1> d_pre2 =
        (d_out * params.w3()).cwiseProduct(a.pre2.unaryExpr(&elu_slope));
    const Eigen::Matrix<double, kHidden, 1> d_pre1 =
        (params.w2().transpose() * d_pre2).cwiseProduct(a.pre1.unaryExpr(&elu_slope));
    return params.w1().dot(d_pre1);
}

BackwardResult backward(const MlpParams &params, double x, double upstream) {
    BackwardResult result;
    result.input = backward_accumulate(params, x, upstream, result.params);
    return result;
}

void adam_step(std::span<double> params, std::span<const double> grad,
               AdamState &state) {
    if (grad.size() != params.size() || state.m.size() != params.size() ||
        state.v.size() != params.size()) {
        throw std::invalid_argument("adam_step: shape mismatch");
    }
    const AdamHyper &h = state.hyper;
    state.t += 1;
    const auto t = static_cast<double>(state.t);
    const double bias1 = 1.0 - std::pow(h.beta1, t);
    const double bias2 = 1.0 - std::pow(h.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = h.beta1 * state.m[i] + (1.0 - h.beta1) * grad[i];
        state.v[i] = h.beta2 * state.v[i] + (1.0 - h.beta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / bias1;
        const double v_hat = state.v[i] / bias2;
        params[i] -= h.lr * m_hat / (std::sqrt(v_hat) + h.eps);
    }
}

} // namespace hqgan
