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

// hqgan: command-line front end for target generation, training, resuming
// and reporting.
//
// Exit codes: 0 success, 1 other failure, 2 configuration error,
// 3 I/O error, 4 numerical abort.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hqgan/error.hpp"
#include "hqgan/runner.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfig = 2,
    kIo = 3,
    kNumerical = 4,
};

hqgan::Overrides overrides(const std::optional<std::uint64_t> &seed,
                           const std::optional<unsigned> &workers) {
    return hqgan::Overrides{seed, workers};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum GAN: density-matrix generator, MLP discriminator"};
    app.require_subcommand(1);

    std::string config;
    std::string checkpoint;
    std::string out;
    std::string run_dir;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--seed", seed, "Override the training seed");
        cmd->add_option("--workers", workers, "Threads for generator evaluation")
            ->check(CLI::PositiveNumber);
    };

    auto *target = app.add_subcommand("target", "Write the target dataset");
    target->add_option("--config", config, "Run configuration")->required();
    target->add_option("--out", out, "Output file (default: target_path)");
    add_common(target);

    auto *train = app.add_subcommand("train", "Train from scratch into a run directory");
    train->add_option("--config", config, "Run configuration")->required();
    train->add_option("--out", out, "Run directory")->required();
    add_common(train);

    auto *resume = app.add_subcommand("resume", "Continue a run from its checkpoint");
    resume->add_option("--checkpoint", checkpoint, "Checkpoint file")->required();
    resume->add_option("--config", config,
                       "Config with a new epoch budget (must match the run)");
    add_common(resume);

    auto *report = app.add_subcommand("report", "Write report files for a run");
    report->add_option("run_dir", run_dir, "Run directory")->required();
    report->add_option("--out", out, "Report directory (default: RUN_DIR/report)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (target->parsed()) {
            const auto path = hqgan::cmd_target(config, out, overrides(seed, workers));
            std::cout << "wrote " << path.string() << '\n';
        } else if (train->parsed()) {
            hqgan::cmd_train(config, out, overrides(seed, workers), &std::cerr);
        } else if (resume->parsed()) {
            std::optional<std::filesystem::path> cfg;
            if (!config.empty()) {
                cfg = config;
            }
            hqgan::cmd_resume(checkpoint, cfg, overrides(seed, workers), &std::cerr);
        } else if (report->parsed()) {
            hqgan::cmd_report(run_dir, out, &std::cerr);
        }
    } catch (const hqgan::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const hqgan::IoError &e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const hqgan::NumericalError &e) {
        std::cerr << "numerical abort: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
