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

#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "hqgan/discriminator.hpp"
#include "oracles.hpp"

using namespace hqgan;

namespace {

/// Straight-line forward pass over the documented layout.
double reference_forward(const std::vector<double> &w, double x) {
    const std::size_t H = kHidden;
    std::vector<double> h1(H), h2(H);
    auto elu_ref = [](double u) { return u > 0 ? u : std::exp(u) - 1.0; };
    for (std::size_t i = 0; i < H; ++i) {
        h1[i] = elu_ref(w[i] * x + w[H + i]);
    }
    for (std::size_t i = 0; i < H; ++i) {
        double s = w[2 * H + H * H + i];
        for (std::size_t j = 0; j < H; ++j) {
            s += w[2 * H + j * H + i] * h1[j];
        }
        h2[i] = elu_ref(s);
    }
    double out = w[3 * H + H * H + H];
    for (std::size_t i = 0; i < H; ++i) {
        out += w[3 * H + H * H + i] * h2[i];
    }
    return 1.0 / (1.0 + std::exp(-out));
}

MlpParams random_params(std::uint64_t seed, double scale) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, scale);
    std::vector<double> v(MlpParams::kSize);
    for (auto &x : v) {
        x = n(gen);
    }
    return MlpParams(v);
}

} // namespace

TEST_CASE("parameter layout", "[discriminator]") {
    CHECK(MlpParams::kSize == 2701);
    CHECK(MlpParams::kW2 == 100);
    CHECK(MlpParams::kB3 == 2700);
    CHECK_THROWS_AS(MlpParams(std::vector<double>(10)), std::invalid_argument);
}

TEST_CASE("Glorot initialization", "[discriminator]") {
    const MlpParams a = init_mlp(1234);
    CHECK(a == init_mlp(1234));
    CHECK_FALSE(a == init_mlp(1235));
    const double l1 = std::sqrt(6.0 / 51.0), l2 = std::sqrt(6.0 / 100.0);
    CHECK(a.w1().cwiseAbs().maxCoeff() <= l1);
    CHECK(a.w2().cwiseAbs().maxCoeff() <= l2);
    CHECK(a.w3().cwiseAbs().maxCoeff() <= l1);
    CHECK(a.b1().isZero());
    CHECK(a.b2().isZero());
    CHECK(a.b3() == 0.0);
    CHECK(a.w2().cwiseAbs().maxCoeff() > 0.9 * l2);
}

TEST_CASE("activations", "[discriminator]") {
    CHECK(elu(2.0) == 2.0);
    CHECK(elu(0.0) == 0.0);
    CHECK(elu(-1.0) == Approx(std::exp(-1.0) - 1.0).epsilon(1e-15));
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(800.0) == 1.0);
    CHECK(sigmoid(-800.0) >= 0.0);
    CHECK(std::isfinite(sigmoid(-800.0)));
    CHECK(sigmoid(3.0) + sigmoid(-3.0) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("forward matches a straight-line reference", "[discriminator]") {
    const MlpParams p = random_params(3, 0.3);
    const auto v = p.values();
    const std::vector<double> w(v.begin(), v.end());
    for (double x = -1.0; x <= 1.0; x += 0.1) {
        const double d = forward(p, x);
        REQUIRE(d > 0.0);
        REQUIRE(d < 1.0);
        REQUIRE(std::abs(d - reference_forward(w, x)) < 1e-14);
    }
}

TEST_CASE("backward matches central finite differences", "[discriminator][property]") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        MlpParams p = random_params(seed, 0.4);
        for (double x : {-0.83, -0.1, 0.37, 0.95}) {
            const double upstream = 1.7;
            const BackwardResult g = backward(p, x, upstream);
            const double h = 1e-6;
            auto values = p.values();
            for (std::size_t i = 0; i < MlpParams::kSize; ++i) {
                const double saved = values[i];
                values[i] = saved + h;
                const double up = forward(p, x);
                values[i] = saved - h;
                const double down = forward(p, x);
                values[i] = saved;
                const double fd = upstream * (up - down) / (2 * h);
                const double an = g.params.values()[i];
                REQUIRE(std::abs(an - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
            }
            const double fdx = upstream * (forward(p, x + h) - forward(p, x - h)) / (2 * h);
            REQUIRE(std::abs(g.input - fdx) <= 1e-5 * std::max(1.0, std::abs(fdx)));
            REQUIRE(input_gradient(p, x) * upstream == Approx(g.input).epsilon(1e-12));
        }
    }
}

TEST_CASE("backward_accumulate sums per-sample gradients", "[discriminator]") {
    const MlpParams p = random_params(8, 0.3);
    MlpGradient acc;
    const double dx1 = backward_accumulate(p, 0.2, 0.5, acc);
    const double dx2 = backward_accumulate(p, -0.4, -1.5, acc);
    const auto g1 = backward(p, 0.2, 0.5);
    const auto g2 = backward(p, -0.4, -1.5);
    CHECK(dx1 == g1.input);
    CHECK(dx2 == g2.input);
    for (std::size_t i = 0; i < MlpParams::kSize; ++i) {
        REQUIRE(acc.values()[i] ==
                Approx(g1.params.values()[i] + g2.params.values()[i]).margin(1e-15));
    }
}

TEST_CASE("Adam agrees with a reference implementation", "[discriminator][property]") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> n(0.0, 1.0);
    const std::size_t dim = 64;
    std::vector<double> x(dim), ref_x;
    for (auto &v : x) {
        v = n(gen);
    }
    ref_x = x;
    AdamState state(dim, AdamHyper{3e-3, 0.9, 0.999, 1e-8});
    oracle::ReferenceAdam ref(dim, 3e-3);
    for (int step = 0; step < 200; ++step) {
        std::vector<double> g(dim);
        for (auto &v : g) {
            v = n(gen) * (step % 7 == 0 ? 1e-4 : 1.0);
        }
        adam_step(x, g, state);
        ref.step(ref_x, g);
        for (std::size_t i = 0; i < dim; ++i) {
            REQUIRE(std::abs(x[i] - ref_x[i]) < 1e-12);
        }
    }
    CHECK(state.t == 200);
}

TEST_CASE("Adam with zero learning rate leaves parameters unchanged", "[discriminator]") {
    std::vector<double> x{1.0, -2.0, 3.0};
    const auto before = x;
    AdamState state(3, AdamHyper{0.0, 0.9, 0.999, 1e-8});
    adam_step(x, std::vector<double>{0.5, 0.5, -7.0}, state);
    CHECK(x == before);
    CHECK(state.t == 1);
    std::vector<double> wrong(2, 0.0);
    CHECK_THROWS_AS(adam_step(x, wrong, state), std::invalid_argument);
}

TEST_CASE("first Adam step moves each coordinate by about lr", "[discriminator]") {
    std::vector<double> x{0.0, 0.0};
    AdamState state(2, AdamHyper{0.01, 0.9, 0.999, 1e-8});
    adam_step(x, std::vector<double>{4.0, -0.001}, state);
    CHECK(x[0] == Approx(-0.01).epsilon(1e-6));
    CHECK(x[1] == Approx(0.01).epsilon(1e-4));
}
