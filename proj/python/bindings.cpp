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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hqgan/config.hpp"
#include "hqgan/error.hpp"
#include "hqgan/runner.hpp"
#include "hqgan/training.hpp"

namespace py = pybind11;
using namespace hqgan;

namespace {

GeneratorParams to_params(const std::array<double, kGeneratorParams> &theta) {
    return GeneratorParams{theta};
}

std::vector<Matrix2c> kraus_ops(const KrausChannel &ch) { return ch.operators; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hybrid quantum GAN core: noisy 2-qubit generator, MLP "
              "discriminator, adversarial training and run management.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<EstimatorMode>(m, "EstimatorMode")
        .value("EXACT", EstimatorMode::Exact)
        .value("SHOTS", EstimatorMode::Shots);

    py::class_<EstimatorConfig>(m, "EstimatorConfig")
        .def(py::init([](EstimatorMode mode, int n_shots) {
                 EstimatorConfig e{mode, n_shots};
                 e.validate();
                 return e;
             }),
             py::arg("mode") = EstimatorMode::Shots, py::arg("n_shots") = 1000)
        .def_readwrite("mode", &EstimatorConfig::mode)
        .def_readwrite("n_shots", &EstimatorConfig::n_shots);

    py::class_<NoiseParams>(m, "NoiseParams")
        .def(py::init([](bool damping, bool dephasing, bool readout) {
                 NoiseParams n;
                 n.enabled = {damping, dephasing, readout};
                 return n;
             }),
             py::arg("damping") = false, py::arg("dephasing") = false,
             py::arg("readout") = false)
        .def_readwrite("T1", &NoiseParams::T1)
        .def_readwrite("T2", &NoiseParams::T2)
        .def_readwrite("t1", &NoiseParams::t1)
        .def_readwrite("t2", &NoiseParams::t2)
        .def_readwrite("p00", &NoiseParams::p00)
        .def_readwrite("p11", &NoiseParams::p11)
        .def_readwrite("override_p_damp", &NoiseParams::override_p_damp)
        .def_readwrite("override_p_deph", &NoiseParams::override_p_deph)
        .def_property(
            "damping", [](const NoiseParams &n) { return n.enabled.damping; },
            [](NoiseParams &n, bool v) { n.enabled.damping = v; })
        .def_property(
            "dephasing", [](const NoiseParams &n) { return n.enabled.dephasing; },
            [](NoiseParams &n, bool v) { n.enabled.dephasing = v; })
        .def_property(
            "readout", [](const NoiseParams &n) { return n.enabled.readout; },
            [](NoiseParams &n, bool v) { n.enabled.readout = v; })
        .def("validate", &NoiseParams::validate);

    m.def("damping_probability", &damping_probability, py::arg("t"), py::arg("T1"));
    m.def("dephasing_probability", &dephasing_probability, py::arg("t"), py::arg("T1"),
          py::arg("T2"));
    m.def(
        "amplitude_damping_kraus",
        [](double p) { return kraus_ops(amplitude_damping_kraus(p)); }, py::arg("p"),
        "Kraus operators as 2x2 complex arrays.");
    m.def(
        "dephasing_kraus", [](double p) { return kraus_ops(dephasing_kraus(p)); },
        py::arg("p"));
    m.def(
        "combined_kraus",
        [](double p_damp, double p_deph) {
            return kraus_ops(
                combined_kraus(amplitude_damping_kraus(p_damp), dephasing_kraus(p_deph)));
        },
        py::arg("p_damp"), py::arg("p_deph"),
        "Damping applied after dephasing, as one channel.");
    m.def("readout_corrected_expectation", &readout_corrected_expectation,
          py::arg("expectation"), py::arg("p00"), py::arg("p11"));

    py::class_<Generator>(m, "Generator")
        .def(py::init<std::optional<NoiseParams>>(), py::arg("noise") = py::none())
        .def(
            "exact_expectation",
            [](const Generator &g, double z, const std::array<double, 3> &theta) {
                return g.exact_expectation(z, to_params(theta));
            },
            py::arg("z"), py::arg("theta"))
        .def(
            "final_state",
            [](const Generator &g, double z, const std::array<double, 3> &theta) {
                return Eigen::Matrix4cd(g.final_state(z, to_params(theta)).matrix());
            },
            py::arg("z"), py::arg("theta"))
        .def(
            "shot_expectation",
            [](const Generator &g, double z, const std::array<double, 3> &theta,
               int n_shots, std::uint64_t seed, std::uint32_t index) {
                CounterRng rng(seed, StreamId{0, Purpose::Test, index, 0});
                return g.shot_expectation(z, to_params(theta), n_shots, rng);
            },
            py::arg("z"), py::arg("theta"), py::arg("n_shots"), py::arg("seed"),
            py::arg("index") = 0)
        .def(
            "param_shift_gradient",
            [](const Generator &g, double z, const std::array<double, 3> &theta,
               const EstimatorConfig &est, std::uint64_t seed) {
                CounterRng rng(seed, StreamId{0, Purpose::Test, 0, 0});
                return g.param_shift_gradient(z, to_params(theta), est, rng);
            },
            py::arg("z"), py::arg("theta"), py::arg("estimator") = EstimatorConfig{},
            py::arg("seed") = 0)
        .def(
            "generate_batch",
            [](const Generator &g, const std::vector<double> &zs,
               const std::array<double, 3> &theta, const EstimatorConfig &est,
               std::uint64_t seed, unsigned workers) {
                py::gil_scoped_release release;
                return g.generate_batch(zs, to_params(theta), est,
                                        StreamFamily{seed, 0, Purpose::Test}, workers);
            },
            py::arg("zs"), py::arg("theta"), py::arg("estimator") = EstimatorConfig{},
            py::arg("seed") = 0, py::arg("workers") = 1);

    py::class_<MlpParams>(m, "MlpParams")
        .def(py::init<>())
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_property_readonly("values",
                               [](const MlpParams &p) {
                                   const auto v = p.values();
                                   return std::vector<double>(v.begin(), v.end());
                               })
        .def("__len__", &MlpParams::size)
        .def_readonly_static("SIZE", &MlpParams::kSize);
    m.def("init_mlp", &init_mlp, py::arg("seed"));
    m.def("mlp_forward", &forward, py::arg("params"), py::arg("x"));
    m.def("mlp_input_gradient", &input_gradient, py::arg("params"), py::arg("x"));

    py::class_<AdamState>(m, "AdamState")
        .def(py::init([](std::size_t n, double lr, double beta1, double beta2, double eps) {
                 return AdamState(n, AdamHyper{lr, beta1, beta2, eps});
             }),
             py::arg("n"), py::arg("lr") = 1e-3, py::arg("beta1") = 0.9,
             py::arg("beta2") = 0.999, py::arg("eps") = 1e-8)
        .def_readonly("m", &AdamState::m)
        .def_readonly("v", &AdamState::v)
        .def_readonly("t", &AdamState::t);
    m.def(
        "adam_step",
        [](std::vector<double> params, const std::vector<double> &grad, AdamState &state) {
            adam_step(params, grad, state);
            return params;
        },
        py::arg("params"), py::arg("grad"), py::arg("state"),
        "Returns the updated parameters; `state` is advanced in place.");

    m.def(
        "discriminator_loss",
        [](const std::vector<double> &d_real, const std::vector<double> &d_fake,
           double smoothing) { return discriminator_loss(d_real, d_fake, smoothing); },
        py::arg("d_real"), py::arg("d_fake"), py::arg("smoothing") = 0.9);
    m.def(
        "generator_loss",
        [](const std::vector<double> &d_fake) { return generator_loss(d_fake); },
        py::arg("d_fake"));

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("bin_count", &Histogram::bin_count)
        .def_readonly("counts", &Histogram::counts)
        .def_readonly("probabilities", &Histogram::probabilities);
    m.def(
        "histogram",
        [](const std::vector<double> &samples, std::size_t bins) {
            return histogram(samples, bins);
        },
        py::arg("samples"), py::arg("bins") = kDefaultBins);
    m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"),
          py::arg("eps") = kDefaultKlEps);

    py::class_<DistributionSummary>(m, "DistributionSummary")
        .def_readonly("mean", &DistributionSummary::mean)
        .def_readonly("std", &DistributionSummary::std)
        .def_readonly("median", &DistributionSummary::median)
        .def_readonly("q1", &DistributionSummary::q1)
        .def_readonly("q3", &DistributionSummary::q3);
    m.def(
        "summarize", [](const std::vector<double> &s) { return summarize(s); },
        py::arg("samples"));

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("epochs", &TrainConfig::epochs)
        .def_readwrite("n_samples", &TrainConfig::n_samples)
        .def_readwrite("estimator", &TrainConfig::estimator)
        .def_readwrite("noise", &TrainConfig::noise)
        .def_readwrite("label_smoothing", &TrainConfig::label_smoothing)
        .def_readwrite("lr_d", &TrainConfig::lr_d)
        .def_readwrite("lr_g", &TrainConfig::lr_g)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_property(
            "theta_init", [](const TrainConfig &c) { return c.theta_init.theta; },
            [](TrainConfig &c, const std::array<double, 3> &t) { c.theta_init.theta = t; })
        .def_readwrite("metric_sample_count", &TrainConfig::metric_sample_count)
        .def_readwrite("checkpoint_every", &TrainConfig::checkpoint_every)
        .def_readwrite("kl_bins", &TrainConfig::kl_bins)
        .def_readwrite("workers", &TrainConfig::workers)
        .def("validate", &TrainConfig::validate);

    py::class_<TargetSpec>(m, "TargetSpec")
        .def(py::init<>())
        .def_property(
            "theta_star", [](const TargetSpec &s) { return s.theta_star.theta; },
            [](TargetSpec &s, const std::array<double, 3> &t) { s.theta_star.theta = t; })
        .def_readwrite("n", &TargetSpec::n)
        .def_readwrite("seed", &TargetSpec::seed)
        .def_readwrite("estimator", &TargetSpec::estimator);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("train", &RunConfig::train)
        .def_readwrite("target", &RunConfig::target);
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("format_config", &format_config, py::arg("config"));
    m.def(
        "fingerprint",
        [](const RunConfig &c, const std::vector<double> &target) {
            return fingerprint(c, target);
        },
        py::arg("config"), py::arg("target"));

    py::class_<EpochRecord>(m, "EpochRecord")
        .def_readonly("epoch", &EpochRecord::epoch)
        .def_readonly("kl", &EpochRecord::kl)
        .def_readonly("c_d", &EpochRecord::c_d)
        .def_readonly("c_g", &EpochRecord::c_g)
        .def_readonly("d_grad_norm", &EpochRecord::d_grad_norm)
        .def_readonly("g_grad_norm", &EpochRecord::g_grad_norm)
        .def_readonly("mean_real", &EpochRecord::mean_real)
        .def_readonly("mean_fake", &EpochRecord::mean_fake)
        .def_readonly("std_real", &EpochRecord::std_real)
        .def_readonly("std_fake", &EpochRecord::std_fake)
        .def_property_readonly("theta", [](const EpochRecord &r) { return r.theta.theta; });

    m.def(
        "make_target",
        [](const std::array<double, 3> &theta_star, int n, const EstimatorConfig &est,
           std::uint64_t seed) {
            py::gil_scoped_release release;
            return make_target(to_params(theta_star), n, est, seed);
        },
        py::arg("theta_star"), py::arg("n"), py::arg("estimator") = EstimatorConfig{},
        py::arg("seed") = 1234);

    py::class_<Trainer>(m, "Trainer")
        .def(py::init<TrainConfig, std::vector<double>>(), py::arg("config"),
             py::arg("target"))
        .def_property_readonly("epoch", [](const Trainer &t) { return t.state().epoch; })
        .def_property_readonly("theta",
                               [](const Trainer &t) { return t.state().theta.theta; })
        .def_property_readonly("discriminator",
                               [](const Trainer &t) { return t.state().disc; })
        .def("snapshot_record", &Trainer::snapshot_record)
        .def("train_epoch", &Trainer::train_epoch,
             py::call_guard<py::gil_scoped_release>())
        .def(
            "run",
            [](Trainer &t) {
                py::gil_scoped_release release;
                return train(t).records;
            },
            "Trains to config.epochs and returns the emitted records.")
        .def("sample", &Trainer::sample, py::arg("n"), py::arg("tag") = 0,
             py::call_guard<py::gil_scoped_release>());

    py::class_<Overrides>(m, "Overrides")
        .def(py::init([](std::optional<std::uint64_t> seed,
                         std::optional<unsigned> workers) {
                 return Overrides{seed, workers};
             }),
             py::arg("seed") = py::none(), py::arg("workers") = py::none());

    m.def(
        "cmd_target",
        [](const std::filesystem::path &config, const std::filesystem::path &out,
           const Overrides &ov) { return cmd_target(config, out, ov); },
        py::arg("config"), py::arg("out") = std::filesystem::path{},
        py::arg("overrides") = Overrides{});
    m.def(
        "cmd_train",
        [](const std::filesystem::path &config, const std::filesystem::path &run_dir,
           const Overrides &ov) {
            py::gil_scoped_release release;
            return cmd_train(config, run_dir, ov).epoch;
        },
        py::arg("config"), py::arg("run_dir"), py::arg("overrides") = Overrides{},
        "Returns the final epoch.");
    m.def(
        "cmd_resume",
        [](const std::filesystem::path &checkpoint,
           std::optional<std::filesystem::path> config, const Overrides &ov) {
            py::gil_scoped_release release;
            return cmd_resume(checkpoint, config, ov).epoch;
        },
        py::arg("checkpoint"), py::arg("config") = py::none(),
        py::arg("overrides") = Overrides{});
    m.def(
        "cmd_report",
        [](const std::filesystem::path &run_dir, const std::filesystem::path &out) {
            return cmd_report(run_dir, out);
        },
        py::arg("run_dir"), py::arg("out") = std::filesystem::path{});
}
