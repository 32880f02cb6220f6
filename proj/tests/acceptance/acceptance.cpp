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

// Acceptance runs. One criterion per invocation:
//
//   hqgan_acceptance A1|A2|A3|A4|A5|A6 [seed]
//
// Prints a single "A# PASS ..." or "A# FAIL ..." line and exits non-zero on
// failure. Progress goes to stderr.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hqgan/checkpoint.hpp"
#include "hqgan/config.hpp"
#include "hqgan/error.hpp"
#include "hqgan/generator.hpp"
#include "hqgan/metrics.hpp"
#include "hqgan/noise.hpp"
#include "hqgan/qsim.hpp"
#include "hqgan/training.hpp"
#include "oracles.hpp"

using namespace hqgan;

namespace {

constexpr double kTol = 0.05;
constexpr int kEvalSamples = 1000;
constexpr int kCheckEvery = 100;
constexpr std::uint32_t kEvalTagBase = 1000;
const GeneratorParams kThetaStar{{0.35, 2.10, 5.06}};
const GeneratorParams kThetaInit{{0.31, 1.89, 4.56}};
std::uint64_t g_seed = 1234;

/// A1 leaves its first passing epoch here for A4.
std::string a1_record() { return "acceptance_A1_epoch_" + std::to_string(g_seed) + ".txt"; }

struct Eval {
    int epoch{0};
    double kl{0.0};
    double dmean{0.0};
    double dstd{0.0};
    double std_fake{0.0};

    [[nodiscard]] bool ok() const { return kl < kTol && dmean < kTol && dstd < kTol; }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string describe(const Eval &e) {
    return "epoch=" + std::to_string(e.epoch) + " kl=" + fmt(e.kl) +
           " dmean=" + fmt(e.dmean) + " dstd=" + fmt(e.dstd);
}

const std::vector<double> &target() {
    static const std::vector<double> t =
        make_target(kThetaStar, kEvalSamples, EstimatorConfig{EstimatorMode::Shots, 1000}, 1234);
    return t;
}

NoiseParams combined_noise() {
    NoiseParams n;
    n.override_p_damp = 0.0033;
    n.override_p_deph = 0.0022;
    n.p00 = n.p11 = 0.91;
    n.enabled = {true, true, true};
    return n;
}

TrainConfig base_config() {
    TrainConfig c;
    c.n_samples = 100;
    c.estimator = EstimatorConfig{EstimatorMode::Shots, 1000};
    c.theta_init = kThetaInit;
    c.seed = g_seed;
    return c;
}

Eval evaluate(const Trainer &t) {
    const std::vector<double> fake =
        t.sample(kEvalSamples, kEvalTagBase + static_cast<std::uint32_t>(t.state().epoch));
    const auto &real = target();
    const DistributionSummary r = summarize(real);
    const DistributionSummary f = summarize(fake);
    Eval e;
    e.epoch = t.state().epoch;
    e.kl = kl_divergence(histogram(real, kDefaultBins), histogram(fake, kDefaultBins));
    e.dmean = std::abs(r.mean - f.mean);
    e.dstd = std::abs(r.std - f.std);
    e.std_fake = f.std;
    return e;
}

struct RunOutcome {
    Eval initial;
    Eval final_eval;
    Eval best;
    std::optional<int> converged;
};

/// Trains for cfg.epochs, evaluating every kCheckEvery epochs. With
/// stop_on_convergence the run ends at the first passing check.
RunOutcome run(const char *name, TrainConfig cfg, bool stop_on_convergence) {
    Trainer t(cfg, target());
    RunOutcome out;
    out.initial = evaluate(t);
    out.best = out.initial;
    auto note = [&](const Eval &e) {
        if (e.kl < out.best.kl) {
            out.best = e;
        }
        if (!out.converged && e.ok()) {
            out.converged = e.epoch;
        }
    };
    note(out.initial);
    while (t.state().epoch < cfg.epochs) {
        t.train_epoch();
        if (t.state().epoch % kCheckEvery == 0) {
            const Eval e = evaluate(t);
            note(e);
            if (e.epoch % 500 == 0) {
                const auto &th = t.state().theta.theta;
                std::cerr << name << " " << describe(e) << " theta=(" << fmt(th[0]) << ", "
                          << fmt(th[1]) << ", " << fmt(th[2]) << ")\n";
            }
            if (stop_on_convergence && out.converged) {
                break;
            }
        }
    }
    out.final_eval = evaluate(t);
    return out;
}

int report(const std::string &id, bool pass, const std::string &detail) {
    std::cout << id << (pass ? " PASS " : " FAIL ") << detail << std::endl;
    return pass ? 0 : 1;
}

std::string convergence_text(const std::optional<int> &epoch) {
    return epoch ? std::to_string(*epoch) : std::string("none");
}

RunOutcome run_a1() {
    TrainConfig c = base_config();
    c.epochs = 4500;
    RunOutcome o = run("A1", c, false);
    std::ofstream(a1_record()) << (o.converged ? *o.converged : -1) << "\n";
    return o;
}

int a1() {
    const RunOutcome o = run_a1();
    return report("A1", o.final_eval.ok(),
                  "final " + describe(o.final_eval) +
                      " first_converged=" + convergence_text(o.converged) +
                      " (need kl, dmean, dstd < 0.05)");
}

int a2() {
    TrainConfig c = base_config();
    c.epochs = 4500;
    c.noise = combined_noise();
    const RunOutcome o = run("A2", c, true);
    return report("A2", o.converged.has_value(),
                  "converged=" + convergence_text(o.converged) + " best " +
                      describe(o.best) + " final " + describe(o.final_eval) +
                      " (need all < 0.05 within 4500 epochs)");
}

int a3() {
    TrainConfig c = base_config();
    c.epochs = 3000;
    c.n_samples = 25;
    c.estimator.n_shots = 250;
    c.noise = combined_noise();
    const RunOutcome o = run("A3", c, true);
    return report("A3", o.converged.has_value(),
                  "converged=" + convergence_text(o.converged) + " best " +
                      describe(o.best) + " final " + describe(o.final_eval) +
                      " (need all < 0.05 within 3000 epochs)");
}

int a4() {
    std::optional<int> a1_epoch;
    if (std::ifstream in(a1_record()); in) {
        int e = -1;
        if (in >> e && e >= 0) {
            a1_epoch = e;
        }
    } else {
        a1_epoch = run_a1().converged;
    }
    TrainConfig c = base_config();
    c.epochs = 6500;
    c.theta_init = GeneratorParams{{0.0, 0.0, 0.0}};
    const RunOutcome o = run("A4", c, true);
    const bool slower = o.converged && (!a1_epoch || *o.converged > *a1_epoch);
    return report("A4", o.converged.has_value() && slower,
                  "converged=" + convergence_text(o.converged) +
                      " a1_converged=" + convergence_text(a1_epoch) + " best " +
                      describe(o.best) + " (need convergence within 6500 epochs, later than A1)");
}

int a5() {
    NoiseParams deph;
    deph.override_p_deph = 0.09;
    deph.enabled.dephasing = true;
    const Generator noisy(deph);
    const Generator clean;
    const EstimatorConfig est{EstimatorMode::Shots, 1000};
    const double std_noisy =
        summarize(sample_generator(noisy, kThetaInit, est, kEvalSamples, 1234, kEvalTagBase))
            .std;
    const double std_clean =
        summarize(sample_generator(clean, kThetaInit, est, kEvalSamples, 1234, kEvalTagBase))
            .std;

    TrainConfig c = base_config();
    c.epochs = 4500;
    c.noise = deph;
    const RunOutcome o = run("A5", c, false);
    const bool wider = std_noisy > std_clean;
    const bool stuck = o.final_eval.kl > kTol;
    return report("A5", wider && stuck,
                  "initial_std noisy=" + fmt(std_noisy) + " noiseless=" + fmt(std_clean) +
                      (wider ? " (wider)" : " (not wider)") + " final_kl=" +
                      fmt(o.final_eval.kl) + (stuck ? " (> 0.05)" : " (<= 0.05)"));
}

// Property checks. Each returns an empty string on success.
using Check = std::function<std::string()>;

std::vector<std::optional<NoiseParams>> noise_modes() {
    std::vector<std::optional<NoiseParams>> modes{std::nullopt};
    NoiseParams n;
    n.enabled = {true, false, false};
    modes.push_back(n);
    n.enabled = {false, true, false};
    modes.push_back(n);
    n.enabled = {false, false, true};
    modes.push_back(n);
    modes.push_back(combined_noise());
    NoiseParams strong;
    strong.override_p_deph = 0.09;
    strong.enabled.dephasing = true;
    modes.push_back(strong);
    return modes;
}

DensityMatrix from(const oracle::M2 &m) { return DensityMatrix(1, ComplexMatrix(m)); }

std::string check_completeness() {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const KrausChannel d = amplitude_damping_kraus(p);
        const KrausChannel f = dephasing_kraus(p);
        for (const KrausChannel &k : {d, f, combined_kraus(d, f)}) {
            if (completeness_error(k) > 1e-12) {
                return "completeness error at p=" + fmt(p);
            }
        }
    }
    for (const auto &mode : noise_modes()) {
        if (mode && mode->has_slot_channel() &&
            completeness_error(per_slot_channel(*mode)) > 1e-12) {
            return "per-slot channel is not trace preserving";
        }
    }
    return {};
}

std::string check_closed_forms() {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const oracle::M2 rho = oracle::random_density<2>(gen);
        const double p = prob(gen);
        const DensityMatrix d = apply_channel(from(rho), amplitude_damping_kraus(p), 0);
        const DensityMatrix f = apply_channel(from(rho), dephasing_kraus(p), 0);
        const double errs[] = {
            std::abs(d(0, 0) - (rho(0, 0) + p * rho(1, 1))),
            std::abs(d(0, 1) - std::sqrt(1 - p) * rho(0, 1)),
            std::abs(d(1, 1) - (1 - p) * rho(1, 1)),
            std::abs(f(0, 0) - rho(0, 0)),
            std::abs(f(0, 1) - (1 - p) * rho(0, 1)),
            std::abs(f(1, 1) - rho(1, 1)),
        };
        for (const double e : errs) {
            if (e > 1e-12) {
                return "channel action deviates from the closed form by " + std::to_string(e);
            }
        }
    }
    return {};
}

std::string check_random_circuits() {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(-7.0, 7.0), prob(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 5);
    for (int trial = 0; trial < 10000; ++trial) {
        DensityMatrix rho = ground_state(2);
        for (int step = 0; step < 12; ++step) {
            const std::size_t q = static_cast<std::size_t>(pick(gen) % 2);
            switch (pick(gen)) {
            case 0: apply_unitary_inplace(rho, GateOp::rx(q, angle(gen))); break;
            case 1: apply_unitary_inplace(rho, GateOp::ry(q, angle(gen))); break;
            case 2: apply_unitary_inplace(rho, GateOp::rz(q, angle(gen))); break;
            case 3: apply_unitary_inplace(rho, GateOp::cnot(q, 1 - q)); break;
            case 4: apply_channel_inplace(rho, amplitude_damping_kraus(prob(gen)), q); break;
            default: apply_channel_inplace(rho, dephasing_kraus(prob(gen)), q); break;
            }
        }
        if (std::abs(rho.trace() - cplx(1.0)) > 1e-10 || rho.hermiticity_error() > 1e-10) {
            return "trace or Hermiticity lost in circuit " + std::to_string(trial);
        }
    }
    return {};
}

std::string check_param_shift() {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> z(-1.0, 1.0), angle(0.0, 6.283185307179586);
    const EstimatorConfig exact{EstimatorMode::Exact, 1};
    for (const auto &mode : noise_modes()) {
        const Generator g(mode);
        CounterRng unused(0, StreamId{});
        for (int trial = 0; trial < 20; ++trial) {
            const double zi = z(gen);
            const GeneratorParams th{{angle(gen), angle(gen), angle(gen)}};
            const auto grad = g.param_shift_gradient(zi, th, exact, unused);
            for (std::size_t k = 0; k < 3; ++k) {
                GeneratorParams up = th, down = th;
                up.theta[k] += 1e-6;
                down.theta[k] -= 1e-6;
                const double fd =
                    (g.exact_expectation(zi, up) - g.exact_expectation(zi, down)) / 2e-6;
                if (std::abs(fd - grad[k]) > 1e-6) {
                    return "parameter-shift gradient differs from finite differences";
                }
            }
        }
    }
    return {};
}

std::string check_discriminator_gradient() {
    MlpParams p = init_mlp(9);
    auto values = p.values();
    const double h = 1e-6;
    for (const double x : {-0.8, 0.1, 0.6}) {
        const BackwardResult b = backward(p, x, 1.0);
        for (std::size_t i = 0; i < MlpParams::kSize; ++i) {
            const double saved = values[i];
            values[i] = saved + h;
            const double up = forward(p, x);
            values[i] = saved - h;
            const double down = forward(p, x);
            values[i] = saved;
            if (std::abs(b.params.values()[i] - (up - down) / (2 * h)) > 1e-5) {
                return "parameter gradient " + std::to_string(i) + " differs at x=" + fmt(x);
            }
        }
        const double fd = (forward(p, x + h) - forward(p, x - h)) / (2 * h);
        if (std::abs(b.input - fd) > 1e-5) {
            return "input gradient differs at x=" + fmt(x);
        }
    }
    return {};
}

std::string check_adam() {
    std::mt19937_64 gen(13);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> mine(50), ref(50);
    for (auto &x : mine) x = n(gen);
    ref = mine;
    AdamState s(mine.size(), AdamHyper{1e-2, 0.9, 0.999, 1e-8});
    oracle::ReferenceAdam r(ref.size(), 1e-2);
    for (int step = 0; step < 200; ++step) {
        std::vector<double> g(mine.size());
        for (auto &x : g) x = n(gen);
        adam_step(mine, g, s);
        r.step(ref, g);
        for (std::size_t i = 0; i < mine.size(); ++i) {
            if (std::abs(mine[i] - ref[i]) > 1e-12) {
                return "Adam deviates from the reference at step " + std::to_string(step);
            }
        }
    }
    MlpParams p = init_mlp(4);
    const MlpParams before = p;
    AdamState frozen(MlpParams::kSize, AdamHyper{0.0, 0.9, 0.999, 1e-8});
    const std::vector<double> g(MlpParams::kSize, 0.3);
    adam_step(p.values(), g, frozen);
    return p == before ? std::string{} : "Adam with lr=0 changed the parameters";
}

std::string check_unbiased() {
    const GeneratorParams th = kThetaInit;
    constexpr int kShots = 1000;
    constexpr std::uint32_t kRepeats = 200;
    for (const auto &mode : noise_modes()) {
        const Generator g(mode);
        for (const double z : {-0.6, 0.2, 0.9}) {
            const double exact = g.exact_expectation(z, th);
            double sum = 0.0;
            for (std::uint32_t r = 0; r < kRepeats; ++r) {
                CounterRng rng(5, StreamId{0, Purpose::Test, r, 0});
                sum += g.shot_expectation(z, th, kShots, rng);
            }
            const double sigma = std::sqrt((1.0 - exact * exact) / (kShots * kRepeats));
            if (std::abs(sum / kRepeats - exact) > 4.0 * sigma + 1e-12) {
                return "shot mean outside 4 sigma of the exact value at z=" + fmt(z);
            }
        }
    }
    return {};
}

std::string check_expectation_range() {
    const Generator g(combined_noise());
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> z(-1.0, 1.0), angle(-10.0, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double e = g.exact_expectation(z(gen), GeneratorParams{{angle(gen), angle(gen),
                                                                      angle(gen)}});
        if (!(e >= -1.0 && e <= 1.0)) {
            return "expectation outside [-1, 1]";
        }
    }
    return {};
}

std::string check_kl() {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> a(50), b(50);
        for (auto &x : a) x = u(gen);
        for (auto &x : b) x = u(gen) * u(gen);
        const Histogram ha = histogram(a, kDefaultBins);
        if (kl_divergence(ha, histogram(b, kDefaultBins)) < 0.0 ||
            kl_divergence(ha, ha) != 0.0) {
            return "KL negative or non-zero on identical histograms";
        }
    }
    return {};
}

TrainConfig quick_config() {
    TrainConfig c = base_config();
    c.epochs = 200;
    c.n_samples = 10;
    c.metric_sample_count = 20;
    c.estimator = EstimatorConfig{EstimatorMode::Shots, 100};
    c.noise = combined_noise();
    return c;
}

std::string check_resume() {
    const TrainConfig c = quick_config();
    const std::vector<double> tgt(target().begin(), target().begin() + 200);
    const TrainResult full = train(c, tgt);

    TrainConfig half = c;
    half.epochs = 100;
    const TrainResult head = train(half, tgt);
    RunConfig rc;
    rc.train = c;
    const Checkpoint saved{head.state, c.seed, fingerprint(rc, tgt), format_config(rc)};
    const Checkpoint restored = deserialize_checkpoint(serialize_checkpoint(saved));
    Trainer resumed(c, tgt, restored.state);
    const TrainResult tail = train(resumed);

    std::vector<EpochRecord> joined = head.records;
    joined.insert(joined.end(), tail.records.begin(), tail.records.end());
    if (!(tail.state == full.state)) {
        return "resumed final state differs";
    }
    if (!(joined == full.records)) {
        return "resumed metrics differ";
    }
    return {};
}

std::string check_workers() {
    TrainConfig c = quick_config();
    c.epochs = 20;
    const std::vector<double> tgt(target().begin(), target().begin() + 200);
    const TrainResult one = train(c, tgt);
    c.workers = 4;
    const TrainResult four = train(c, tgt);
    return one.records == four.records && one.state == four.state
               ? std::string{}
               : "results depend on the worker count";
}

int a6() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<const char *, Check>> checks{
        {"completeness", check_completeness},
        {"closed_forms", check_closed_forms},
        {"random_circuits", check_random_circuits},
        {"param_shift", check_param_shift},
        {"discriminator_gradient", check_discriminator_gradient},
        {"adam", check_adam},
        {"unbiased_shots", check_unbiased},
        {"expectation_range", check_expectation_range},
        {"kl", check_kl},
        {"resume", check_resume},
        {"workers", check_workers},
    };
    std::string failures;
    for (const auto &[name, check] : checks) {
        std::string why;
        try {
            why = check();
        } catch (const std::exception &e) {
            why = std::string("threw: ") + e.what();
        }
        if (!why.empty()) {
            failures += std::string(" ") + name + ": " + why + ";";
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = failures.empty() && seconds < 60.0;
    return report("A6", pass,
                  std::to_string(checks.size()) + " property checks in " + fmt(seconds) +
                      " s (limit 60 s)" + (failures.empty() ? "" : ";" + failures));
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2 || argc > 3) {
        std::cerr << "usage: hqgan_acceptance A1|A2|A3|A4|A5|A6 [seed]\n";
        return 2;
    }
    const std::string which = argv[1];
    if (argc == 3) {
        g_seed = std::stoull(argv[2]);
    }
    try {
        if (which == "A1") return a1();
        if (which == "A2") return a2();
        if (which == "A3") return a3();
        if (which == "A4") return a4();
        if (which == "A5") return a5();
        if (which == "A6") return a6();
    } catch (const std::exception &e) {
        return report(which, false, std::string("error: ") + e.what());
    }
    std::cerr << "unknown criterion " << which << "\n";
    return 2;
}
