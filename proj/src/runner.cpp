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

#include "hqgan/runner.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "json.hpp"

#include "hqgan/error.hpp"

namespace hqgan {

namespace fs = std::filesystem;

namespace {

using nlohmann::json;

constexpr const char *kConfigName = "config.ini";
constexpr const char *kTargetName = "target.json";
constexpr const char *kMetricsName = "metrics.csv";
constexpr const char *kCheckpointName = "checkpoint.json";

void apply(RunConfig &cfg, const Overrides &ov) {
    if (ov.seed) {
        cfg.train.seed = *ov.seed;
    }
    if (ov.workers) {
        cfg.train.workers = *ov.workers;
    }
    cfg.validate();
}

void say(std::ostream *log, const std::string &line) {
    if (log) {
        *log << line << '\n' << std::flush;
    }
}

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create directory " + dir.string());
    }
}

int row_epoch(const std::string &line) {
    const auto comma = line.find(',');
    try {
        return std::stoi(line.substr(0, comma));
    } catch (const std::exception &) {
        throw IoError("metrics.csv: malformed row '" + line + "'");
    }
}

/// Header plus every row with epoch <= last_epoch.
std::vector<std::string> read_metrics(const fs::path &path, int last_epoch) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader) {
        throw IoError(path.string() + ": missing or unexpected header");
    }
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (row_epoch(line) <= last_epoch) {
            rows.push_back(line);
        }
    }
    if (rows.size() != static_cast<std::size_t>(last_epoch) + 1) {
        throw IoError(path.string() + ": expected " + std::to_string(last_epoch + 1) +
                      " rows up to epoch " + std::to_string(last_epoch) + ", found " +
                      std::to_string(rows.size()));
    }
    return rows;
}

/// Config as stored in a run directory: target_path points at the local copy.
RunConfig local_config(RunConfig cfg) {
    cfg.train.target_path = kTargetName;
    return cfg;
}

RunConfig read_run_config(const fs::path &dir) {
    return load_config(dir / kConfigName);
}

TrainState run_epochs(const RunConfig &cfg, const TargetFile &target, TrainState state,
                      const fs::path &dir, std::ofstream &metrics, std::ostream *log) {
    const std::uint64_t fp = fingerprint(cfg, target.values);
    const std::string config_text = format_config(local_config(cfg));
    Trainer trainer(cfg.train, target.values, std::move(state));

    auto checkpoint = [&] {
        save_checkpoint(dir / kCheckpointName,
                        Checkpoint{trainer.state(), cfg.train.seed, fp, config_text});
    };
    const int every = cfg.train.checkpoint_every;
    const EpochObserver observer = [&](const EpochRecord &r, const Trainer &) {
        metrics << format_metrics_row(r) << '\n';
        metrics.flush();
        if (!metrics) {
            throw IoError("cannot append to " + (dir / kMetricsName).string());
        }
        if (r.epoch % every == 0) {
            checkpoint();
            std::ostringstream msg;
            msg << "epoch " << r.epoch << "  kl " << r.kl << "  c_d " << r.c_d
                << "  c_g " << r.c_g << "  mean " << r.mean_fake << "/" << r.mean_real
                << "  std " << r.std_fake << "/" << r.std_real;
            say(log, msg.str());
        }
    };

    try {
        train(trainer, observer);
    } catch (const NumericalError &) {
        checkpoint();
        throw;
    }
    checkpoint();
    return trainer.state();
}

void write_values_csv(const fs::path &path, const std::vector<double> &values) {
    std::string out = "value\n";
    for (const double v : values) {
        out += format_double(v);
        out += '\n';
    }
    write_file_atomic(path, out);
}

json summary_json(const DistributionSummary &s) {
    return json{{"mean", s.mean},
                {"std", s.std},
                {"median", s.median},
                {"q1", s.q1},
                {"q3", s.q3}};
}

} // namespace

std::string format_metrics_row(const EpochRecord &r) {
    std::string row = std::to_string(r.epoch);
    for (const double v : {r.kl, r.c_d, r.c_g, r.d_grad_norm, r.g_grad_norm, r.mean_real,
                           r.mean_fake, r.std_real, r.std_fake, r.theta.theta[0],
                           r.theta.theta[1], r.theta.theta[2]}) {
        row += ',';
        row += format_double(v);
    }
    return row;
}

RunLock::RunLock(const fs::path &dir) {
    const fs::path lock = dir / ".lock";
    fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) {
        throw IoError("cannot open " + lock.string() + ": " + std::strerror(errno));
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw IoError("run directory " + dir.string() + " is in use by another process");
    }
}

RunLock::~RunLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

TargetFile build_target(const TargetSpec &spec) {
    spec.validate();
    TargetFile t;
    t.spec = spec;
    t.values = make_target(spec.theta_star, spec.n, spec.estimator, spec.seed);
    t.summary = summarize(t.values);
    return t;
}

fs::path cmd_target(const fs::path &config, const fs::path &out, const Overrides &ov) {
    RunConfig cfg = load_config(config);
    apply(cfg, ov);
    const fs::path dest = out.empty() ? fs::path(cfg.train.target_path) : out;
    if (dest.has_parent_path()) {
        ensure_dir(dest.parent_path());
    }
    save_target(dest, build_target(cfg.target));
    return dest;
}

TrainState cmd_train(const fs::path &config, const fs::path &run_dir, const Overrides &ov,
                     std::ostream *log) {
    RunConfig cfg = load_config(config);
    apply(cfg, ov);
    ensure_dir(run_dir);
    RunLock lock(run_dir);

    TargetFile target;
    if (fs::exists(cfg.train.target_path)) {
        target = load_target(cfg.train.target_path);
        say(log, "target: " + cfg.train.target_path);
    } else {
        target = build_target(cfg.target);
        say(log, "target: generated " + std::to_string(target.values.size()) +
                     " points (no file at " + cfg.train.target_path + ")");
    }
    save_target(run_dir / kTargetName, target);
    write_file_atomic(run_dir / kConfigName, format_config(local_config(cfg)));

    std::ofstream metrics(run_dir / kMetricsName, std::ios::binary | std::ios::trunc);
    if (!metrics) {
        throw IoError("cannot write " + (run_dir / kMetricsName).string());
    }
    metrics << kMetricsHeader << '\n';
    return run_epochs(cfg, target, initial_state(cfg.train), run_dir, metrics, log);
}

TrainState cmd_resume(const fs::path &checkpoint, const std::optional<fs::path> &config,
                      const Overrides &ov, std::ostream *log) {
    const fs::path dir = checkpoint.has_parent_path() ? checkpoint.parent_path() : ".";
    RunLock lock(dir);
    const Checkpoint ckpt = load_checkpoint(checkpoint);

    RunConfig cfg = config ? load_config(*config) : read_run_config(dir);
    apply(cfg, ov);
    const TargetFile target = load_target(dir / kTargetName);
    if (fingerprint(cfg, target.values) != ckpt.fingerprint) {
        throw ConfigError("fingerprint: config or target differs from the checkpointed run");
    }
    if (cfg.train.seed != ckpt.seed) {
        throw ConfigError("seed: differs from the checkpointed run");
    }

    const std::vector<std::string> rows = read_metrics(dir / kMetricsName, ckpt.state.epoch);
    std::string kept = std::string(kMetricsHeader) + '\n';
    for (const auto &row : rows) {
        kept += row;
        kept += '\n';
    }
    write_file_atomic(dir / kMetricsName, kept);
    write_file_atomic(dir / kConfigName, format_config(local_config(cfg)));

    std::ofstream metrics(dir / kMetricsName, std::ios::binary | std::ios::app);
    if (!metrics) {
        throw IoError("cannot append to " + (dir / kMetricsName).string());
    }
    say(log, "resuming at epoch " + std::to_string(ckpt.state.epoch) + " of " +
                 std::to_string(cfg.train.epochs));
    return run_epochs(cfg, target, ckpt.state, dir, metrics, log);
}

fs::path cmd_report(const fs::path &run_dir, const fs::path &out, std::ostream *log) {
    for (const char *name : {kConfigName, kTargetName, kMetricsName, kCheckpointName}) {
        if (!fs::exists(run_dir / name)) {
            throw IoError("run directory " + run_dir.string() + " has no " + name);
        }
    }
    const RunConfig cfg = read_run_config(run_dir);
    const TargetFile target = load_target(run_dir / kTargetName);
    const Checkpoint ckpt = load_checkpoint(run_dir / kCheckpointName);
    const std::vector<std::string> rows = read_metrics(run_dir / kMetricsName, ckpt.state.epoch);

    const fs::path dest = out.empty() ? run_dir / "report" : out;
    ensure_dir(dest);

    std::string csv = std::string(kMetricsHeader) + '\n';
    for (const auto &row : rows) {
        csv += row;
        csv += '\n';
    }
    write_file_atomic(dest / kMetricsName, csv);

    const Generator gen(cfg.train.noise);
    const TrainConfig &t = cfg.train;
    const std::vector<double> initial = sample_generator(
        gen, t.theta_init, t.estimator, kReportSamples, t.seed, kInitialTag, t.workers);
    const std::vector<double> final_values = sample_generator(
        gen, ckpt.state.theta, t.estimator, kReportSamples, t.seed, kFinalTag, t.workers);
    write_values_csv(dest / "initial_distribution.csv", initial);
    write_values_csv(dest / "final_distribution.csv", final_values);
    write_values_csv(dest / "target_distribution.csv", target.values);

    const Histogram target_hist = histogram(target.values, t.kl_bins);
    json summary;
    summary["epoch"] = ckpt.state.epoch;
    summary["records"] = rows.size();
    summary["theta_init"] = t.theta_init.theta;
    summary["theta_final"] = ckpt.state.theta.theta;
    summary["samples"] = kReportSamples;
    summary["bins"] = t.kl_bins;
    summary["target"] = summary_json(target.summary);
    summary["initial"] = summary_json(summarize(initial));
    summary["final"] = summary_json(summarize(final_values));
    summary["kl_initial"] = kl_divergence(target_hist, histogram(initial, t.kl_bins));
    summary["kl_final"] = kl_divergence(target_hist, histogram(final_values, t.kl_bins));
    write_file_atomic(dest / "summary.json", summary.dump(2) + "\n");

    say(log, "report written to " + dest.string());
    return dest;
}

} // namespace hqgan
