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

#include "hqgan/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hqgan/error.hpp"

namespace hqgan {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> &known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"run",
         {"epochs", "n_samples", "seed", "theta_init", "label_smoothing",
          "metric_sample_count", "checkpoint_every", "kl_bins", "workers",
          "target_path"}},
        {"estimator", {"mode", "n_shots"}},
        {"optimizer", {"lr_d", "lr_g", "beta1", "beta2", "eps"}},
        {"noise",
         {"damping", "dephasing", "readout", "T1", "T2", "t1", "t2", "p00", "p11",
          "p_damp", "p_deph"}},
        {"target", {"theta_star", "n", "seed", "mode", "n_shots"}},
    };
    return keys;
}

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string &field, const std::string &value,
                            const char *expected) {
    throw ConfigError(field + ": expected " + expected + ", got '" + value + "'");
}

template <class T> T parse_number(const std::string &field, const std::string &raw) {
    const std::string value = trim(raw);
    T out{};
    const char *begin = value.data();
    const char *end = begin + value.size();
    if (!value.empty() && value.front() == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (value.empty() || ec != std::errc() || ptr != end) {
        if constexpr (std::is_floating_point_v<T>) {
            bad_value(field, value, "a number");
        } else {
            bad_value(field, value, "an integer");
        }
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(out)) {
            bad_value(field, value, "a finite number");
        }
    }
    return out;
}

bool parse_bool(const std::string &field, const std::string &raw) {
    std::string v = trim(raw);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "off" || v == "0") {
        return false;
    }
    bad_value(field, raw, "true or false");
}

GeneratorParams parse_angles(const std::string &field, const std::string &raw) {
    std::vector<std::string> parts;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        parts.push_back(item);
    }
    if (parts.size() != kGeneratorParams) {
        bad_value(field, raw, "three comma-separated angles");
    }
    GeneratorParams p;
    for (std::size_t k = 0; k < kGeneratorParams; ++k) {
        p.theta[k] = parse_number<double>(field, parts[k]);
    }
    return p;
}

EstimatorMode parse_mode(const std::string &field, const std::string &raw) {
    const std::string v = trim(raw);
    if (v == "exact") {
        return EstimatorMode::Exact;
    }
    if (v == "shots") {
        return EstimatorMode::Shots;
    }
    bad_value(field, raw, "'exact' or 'shots'");
}

std::string format_angles(const GeneratorParams &p) {
    return format_double(p.theta[0]) + ", " + format_double(p.theta[1]) + ", " +
           format_double(p.theta[2]);
}

const char *mode_name(EstimatorMode m) {
    return m == EstimatorMode::Exact ? "exact" : "shots";
}

class Reader {
  public:
    explicit Reader(const pt::ptree &tree) : tree_(tree) {}

    template <class F> void with(const std::string &section, const std::string &key, F f) {
        const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
        if (!sec) {
            return;
        }
        const auto it = sec->find(key);
        if (it != sec->not_found()) {
            f(section + "." + key, it->second.data());
        }
    }

  private:
    const pt::ptree &tree_;
};

void check_structure(const pt::ptree &tree) {
    const auto &known = known_keys();
    for (const auto &[section, body] : tree) {
        if (body.empty()) {
            throw ConfigError(section + ": key outside of any section");
        }
        const auto sec = known.find(section);
        if (sec == known.end()) {
            throw ConfigError(section + ": unknown section");
        }
        for (const auto &[key, value] : body) {
            if (!sec->second.count(key)) {
                throw ConfigError(section + "." + key + ": unknown key");
            }
            if (!value.empty()) {
                throw ConfigError(section + "." + key + ": nested keys not allowed");
            }
        }
    }
}

void append_bytes(std::vector<unsigned char> &out, const std::string &s) {
    out.insert(out.end(), s.begin(), s.end());
}

} // namespace

void TargetSpec::validate() const {
    if (n < 1) {
        throw ConfigError("target.n: must be at least 1");
    }
    if (estimator.mode == EstimatorMode::Shots && estimator.n_shots < 1) {
        throw ConfigError("target.n_shots: must be at least 1");
    }
    for (const double t : theta_star.theta) {
        if (!std::isfinite(t)) {
            throw ConfigError("target.theta_star: must be finite");
        }
    }
}

void RunConfig::validate() const {
    train.validate();
    target.validate();
}

RunConfig parse_config(const std::string &text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(std::string("config syntax: ") + e.message() + " (line " +
                          std::to_string(e.line()) + ")");
    }
    check_structure(tree);

    RunConfig cfg;
    TrainConfig &t = cfg.train;
    Reader r(tree);
    r.with("run", "epochs", [&](auto f, auto v) { t.epochs = parse_number<int>(f, v); });
    r.with("run", "n_samples",
           [&](auto f, auto v) { t.n_samples = parse_number<int>(f, v); });
    r.with("run", "seed",
           [&](auto f, auto v) { t.seed = parse_number<std::uint64_t>(f, v); });
    r.with("run", "theta_init",
           [&](auto f, auto v) { t.theta_init = parse_angles(f, v); });
    r.with("run", "label_smoothing",
           [&](auto f, auto v) { t.label_smoothing = parse_number<double>(f, v); });
    r.with("run", "metric_sample_count",
           [&](auto f, auto v) { t.metric_sample_count = parse_number<int>(f, v); });
    r.with("run", "checkpoint_every",
           [&](auto f, auto v) { t.checkpoint_every = parse_number<int>(f, v); });
    r.with("run", "kl_bins",
           [&](auto f, auto v) { t.kl_bins = parse_number<std::size_t>(f, v); });
    r.with("run", "workers",
           [&](auto f, auto v) { t.workers = parse_number<unsigned>(f, v); });
    r.with("run", "target_path", [&](auto f, auto v) {
        t.target_path = trim(v);
        if (t.target_path.empty()) {
            bad_value(f, v, "a file path");
        }
    });

    r.with("estimator", "mode",
           [&](auto f, auto v) { t.estimator.mode = parse_mode(f, v); });
    r.with("estimator", "n_shots",
           [&](auto f, auto v) { t.estimator.n_shots = parse_number<int>(f, v); });

    r.with("optimizer", "lr_d", [&](auto f, auto v) { t.lr_d = parse_number<double>(f, v); });
    r.with("optimizer", "lr_g", [&](auto f, auto v) { t.lr_g = parse_number<double>(f, v); });
    r.with("optimizer", "beta1",
           [&](auto f, auto v) { t.adam_beta1 = parse_number<double>(f, v); });
    r.with("optimizer", "beta2",
           [&](auto f, auto v) { t.adam_beta2 = parse_number<double>(f, v); });
    r.with("optimizer", "eps",
           [&](auto f, auto v) { t.adam_eps = parse_number<double>(f, v); });

    NoiseParams n;
    r.with("noise", "damping",
           [&](auto f, auto v) { n.enabled.damping = parse_bool(f, v); });
    r.with("noise", "dephasing",
           [&](auto f, auto v) { n.enabled.dephasing = parse_bool(f, v); });
    r.with("noise", "readout",
           [&](auto f, auto v) { n.enabled.readout = parse_bool(f, v); });
    r.with("noise", "T1", [&](auto f, auto v) { n.T1 = parse_number<double>(f, v); });
    r.with("noise", "T2", [&](auto f, auto v) { n.T2 = parse_number<double>(f, v); });
    r.with("noise", "t1", [&](auto f, auto v) { n.t1 = parse_number<double>(f, v); });
    r.with("noise", "t2", [&](auto f, auto v) { n.t2 = parse_number<double>(f, v); });
    r.with("noise", "p00", [&](auto f, auto v) { n.p00 = parse_number<double>(f, v); });
    r.with("noise", "p11", [&](auto f, auto v) { n.p11 = parse_number<double>(f, v); });
    r.with("noise", "p_damp",
           [&](auto f, auto v) { n.override_p_damp = parse_number<double>(f, v); });
    r.with("noise", "p_deph",
           [&](auto f, auto v) { n.override_p_deph = parse_number<double>(f, v); });
    if (n.enabled.damping || n.enabled.dephasing || n.enabled.readout) {
        t.noise = n;
    } else if (n != NoiseParams{}) {
        throw ConfigError("noise: parameters given but no channel is enabled");
    }

    TargetSpec &g = cfg.target;
    r.with("target", "theta_star",
           [&](auto f, auto v) { g.theta_star = parse_angles(f, v); });
    r.with("target", "n", [&](auto f, auto v) { g.n = parse_number<int>(f, v); });
    r.with("target", "seed",
           [&](auto f, auto v) { g.seed = parse_number<std::uint64_t>(f, v); });
    r.with("target", "mode",
           [&](auto f, auto v) { g.estimator.mode = parse_mode(f, v); });
    r.with("target", "n_shots",
           [&](auto f, auto v) { g.estimator.n_shots = parse_number<int>(f, v); });

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    RunConfig cfg = parse_config(buf.str());
    std::filesystem::path target(cfg.train.target_path);
    if (target.is_relative()) {
        cfg.train.target_path = (path.parent_path() / target).lexically_normal().string();
    }
    return cfg;
}

std::string format_config(const RunConfig &cfg) {
    const TrainConfig &t = cfg.train;
    std::ostringstream o;
    o << "[run]\n"
      << "epochs = " << t.epochs << "\n"
      << "n_samples = " << t.n_samples << "\n"
      << "seed = " << t.seed << "\n"
      << "theta_init = " << format_angles(t.theta_init) << "\n"
      << "label_smoothing = " << format_double(t.label_smoothing) << "\n"
      << "metric_sample_count = " << t.metric_sample_count << "\n"
      << "checkpoint_every = " << t.checkpoint_every << "\n"
      << "kl_bins = " << t.kl_bins << "\n"
      << "workers = " << t.workers << "\n"
      << "target_path = " << t.target_path << "\n\n";
    o << "[estimator]\n"
      << "mode = " << mode_name(t.estimator.mode) << "\n"
      << "n_shots = " << t.estimator.n_shots << "\n\n";
    o << "[optimizer]\n"
      << "lr_d = " << format_double(t.lr_d) << "\n"
      << "lr_g = " << format_double(t.lr_g) << "\n"
      << "beta1 = " << format_double(t.adam_beta1) << "\n"
      << "beta2 = " << format_double(t.adam_beta2) << "\n"
      << "eps = " << format_double(t.adam_eps) << "\n\n";
    const NoiseParams n = t.noise.value_or(NoiseParams{});
    o << "[noise]\n"
      << "damping = " << (n.enabled.damping ? "true" : "false") << "\n"
      << "dephasing = " << (n.enabled.dephasing ? "true" : "false") << "\n"
      << "readout = " << (n.enabled.readout ? "true" : "false") << "\n"
      << "T1 = " << format_double(n.T1) << "\n"
      << "T2 = " << format_double(n.T2) << "\n"
      << "t1 = " << format_double(n.t1) << "\n"
      << "t2 = " << format_double(n.t2) << "\n"
      << "p00 = " << format_double(n.p00) << "\n"
      << "p11 = " << format_double(n.p11) << "\n";
    if (n.override_p_damp) {
        o << "p_damp = " << format_double(*n.override_p_damp) << "\n";
    }
    if (n.override_p_deph) {
        o << "p_deph = " << format_double(*n.override_p_deph) << "\n";
    }
    o << "\n[target]\n"
      << "theta_star = " << format_angles(cfg.target.theta_star) << "\n"
      << "n = " << cfg.target.n << "\n"
      << "seed = " << cfg.target.seed << "\n"
      << "mode = " << mode_name(cfg.target.estimator.mode) << "\n"
      << "n_shots = " << cfg.target.estimator.n_shots << "\n";
    return o.str();
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t hash) {
    for (const unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t fingerprint(const RunConfig &cfg, std::span<const double> target) {
    RunConfig canon = cfg;
    canon.train.epochs = 0;
    canon.train.checkpoint_every = 1;
    canon.train.workers = 1;
    canon.train.target_path = "-";
    std::vector<unsigned char> bytes;
    append_bytes(bytes, format_config(canon));
    for (const double v : target) {
        std::array<unsigned char, sizeof(double)> raw{};
        std::memcpy(raw.data(), &v, sizeof(double));
        bytes.insert(bytes.end(), raw.begin(), raw.end());
    }
    return fnv1a(bytes);
}

} // namespace hqgan
