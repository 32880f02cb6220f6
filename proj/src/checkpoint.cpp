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

#include "hqgan/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "hqgan/error.hpp"

namespace hqgan {

namespace {

using nlohmann::json;

json adam_to_json(const AdamState &s) {
    return json{{"t", s.t},
                {"lr", s.hyper.lr},
                {"beta1", s.hyper.beta1},
                {"beta2", s.hyper.beta2},
                {"eps", s.hyper.eps},
                {"m", s.m},
                {"v", s.v}};
}

AdamState adam_from_json(const json &j) {
    AdamState s;
    s.t = j.at("t").get<std::uint64_t>();
    s.hyper.lr = j.at("lr").get<double>();
    s.hyper.beta1 = j.at("beta1").get<double>();
    s.hyper.beta2 = j.at("beta2").get<double>();
    s.hyper.eps = j.at("eps").get<double>();
    s.m = j.at("m").get<std::vector<double>>();
    s.v = j.at("v").get<std::vector<double>>();
    if (s.m.size() != s.v.size()) {
        throw IoError("checkpoint: Adam moment sizes differ");
    }
    return s;
}

const char *mode_name(EstimatorMode m) {
    return m == EstimatorMode::Exact ? "exact" : "shots";
}

json summary_to_json(const DistributionSummary &s) {
    return json{{"mean", s.mean},
                {"std", s.std},
                {"median", s.median},
                {"q1", s.q1},
                {"q3", s.q3}};
}

template <class F> auto parse_or_throw(const std::string &what, F f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw IoError(what + ": " + e.what());
    }
}

} // namespace

std::string serialize_checkpoint(const Checkpoint &ckpt) {
    const TrainState &s = ckpt.state;
    const auto disc = s.disc.values();
    json j;
    j["format_version"] = kCheckpointFormat;
    j["epoch"] = s.epoch;
    j["theta"] = s.theta.theta;
    j["discriminator"] = std::vector<double>(disc.begin(), disc.end());
    j["adam_discriminator"] = adam_to_json(s.disc_adam);
    j["adam_generator"] = adam_to_json(s.gen_adam);
    j["rng"] = json{{"scheme", "philox4x32-10"}, {"seed", ckpt.seed},
                    {"next_epoch", s.epoch + 1}};
    j["fingerprint"] = ckpt.fingerprint;
    j["config"] = ckpt.config;
    return j.dump(1) + "\n";
}

Checkpoint deserialize_checkpoint(const std::string &text) {
    return parse_or_throw("checkpoint", [&] {
        const json j = json::parse(text);
        const int version = j.at("format_version").get<int>();
        if (version != kCheckpointFormat) {
            throw IoError("checkpoint: format_version " + std::to_string(version) +
                          " is not supported (expected " +
                          std::to_string(kCheckpointFormat) + ")");
        }
        Checkpoint c;
        c.state.epoch = j.at("epoch").get<int>();
        c.state.theta.theta = j.at("theta").get<std::array<double, kGeneratorParams>>();
        auto disc = j.at("discriminator").get<std::vector<double>>();
        if (disc.size() != MlpParams::kSize) {
            throw IoError("checkpoint: discriminator has " + std::to_string(disc.size()) +
                          " parameters");
        }
        c.state.disc = MlpParams(std::move(disc));
        c.state.disc_adam = adam_from_json(j.at("adam_discriminator"));
        c.state.gen_adam = adam_from_json(j.at("adam_generator"));
        const json &rng = j.at("rng");
        c.seed = rng.at("seed").get<std::uint64_t>();
        if (rng.at("next_epoch").get<int>() != c.state.epoch + 1) {
            throw IoError("checkpoint: rng position disagrees with epoch");
        }
        c.fingerprint = j.at("fingerprint").get<std::uint64_t>();
        c.config = j.at("config").get<std::string>();
        return c;
    });
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path &path, const std::string &data) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out << data;
        out.flush();
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
    }
}

void save_checkpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
    write_file_atomic(path, serialize_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    return deserialize_checkpoint(read_file(path));
}

std::string serialize_target(const TargetFile &target) {
    json j;
    j["format_version"] = kTargetFormat;
    j["theta_star"] = target.spec.theta_star.theta;
    j["n"] = target.values.size();
    j["seed"] = target.spec.seed;
    j["estimator"] = json{{"mode", mode_name(target.spec.estimator.mode)},
                          {"n_shots", target.spec.estimator.n_shots}};
    j["summary"] = summary_to_json(target.summary);
    j["values"] = target.values;
    return j.dump(1) + "\n";
}

TargetFile deserialize_target(const std::string &text) {
    return parse_or_throw("target file", [&] {
        const json j = json::parse(text);
        const int version = j.at("format_version").get<int>();
        if (version != kTargetFormat) {
            throw IoError("target file: format_version " + std::to_string(version) +
                          " is not supported");
        }
        TargetFile t;
        t.spec.theta_star.theta =
            j.at("theta_star").get<std::array<double, kGeneratorParams>>();
        t.spec.seed = j.at("seed").get<std::uint64_t>();
        const json &est = j.at("estimator");
        const auto mode = est.at("mode").get<std::string>();
        if (mode != "exact" && mode != "shots") {
            throw IoError("target file: unknown estimator mode '" + mode + "'");
        }
        t.spec.estimator.mode = mode == "exact" ? EstimatorMode::Exact : EstimatorMode::Shots;
        t.spec.estimator.n_shots = est.at("n_shots").get<int>();
        t.values = j.at("values").get<std::vector<double>>();
        if (t.values.empty() || t.values.size() != j.at("n").get<std::size_t>()) {
            throw IoError("target file: value count does not match n");
        }
        t.spec.n = static_cast<int>(t.values.size());
        t.summary = summarize(t.values);
        return t;
    });
}

void save_target(const std::filesystem::path &path, const TargetFile &target) {
    write_file_atomic(path, serialize_target(target));
}

TargetFile load_target(const std::filesystem::path &path) {
    return deserialize_target(read_file(path));
}

} // namespace hqgan
