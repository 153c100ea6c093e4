// SPDX-License-Identifier: Apache-2.0
//
// fcdetect - detection in analog sensor networks with a multi-antenna fusion center
// Copyright (C) 2026 The fcdetect authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Experiment runner.
//
//   fcdetect run      --config exp.cfg [--seed N] [--trials N] [--channels N] [--out path]
//   fcdetect validate --config exp.cfg
//   fcdetect bounds   [--config exp.cfg] [--out path]
//
// FCDETECT_THREADS sets the number of worker threads (default: all cores).

#include "fcdetect/config.hpp"
#include "fcdetect/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace
{

struct Overrides
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> channels;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config_path, "Experiment configuration file (key = value)");
    cmd->add_option("--seed", o.seed, "Base seed (overrides the file)");
    cmd->add_option("--trials", o.trials, "Detection trials per channel realization");
    cmd->add_option("--channels", o.channels, "Number of channel realizations");
    cmd->add_option("--out", o.out, "Output CSV path");
}

fcd::ExperimentConfig load(const Overrides& o)
{
    fcd::ExperimentConfig cfg = o.config_path.empty() ? fcd::ExperimentConfig{} : fcd::load_config(o.config_path);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.trials)
        cfg.trials_per_channel = *o.trials;
    if (o.channels)
        cfg.channel_realizations = *o.channels;
    if (o.out)
        cfg.output_path = *o.out;
    return cfg;
}

int report_violations(const std::vector<fcd::Violation>& violations)
{
    for (const auto& v : violations)
        std::cerr << v.field << ": " << v.rule << "\n";
    return violations.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Detection in analog sensor networks with a multi-antenna fusion center"};
    app.require_subcommand(1);

    Overrides run_opts, validate_opts, bounds_opts;
    auto* run_cmd = app.add_subcommand("run", "Run the experiment named in the config");
    add_common(run_cmd, run_opts);
    run_cmd->get_option("--config")->required();
    auto* validate_cmd = app.add_subcommand("validate", "Check a config and list rule violations");
    add_common(validate_cmd, validate_opts);
    validate_cmd->get_option("--config")->required();
    auto* bounds_cmd = app.add_subcommand("bounds", "Print the closed-form detection bounds");
    add_common(bounds_cmd, bounds_opts);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*validate_cmd)
        {
            const int rc = report_violations(fcd::validate(load(validate_opts)));
            if (rc == 0)
                std::cout << "ok\n";
            return rc;
        }

        if (*bounds_cmd)
        {
            fcd::ExperimentConfig cfg = load(bounds_opts);
            cfg.experiment = fcd::ExperimentKind::Bounds;
            if (const int rc = report_violations(fcd::validate(cfg)); rc != 0)
                return rc;
            if (bounds_opts.out)
            {
                const auto a = fcd::run(cfg);
                std::cout << "wrote " << a.csv_path << "\n";
            }
            else
            {
                std::cout << fcd::run_experiment(fcd::resolve(cfg)).to_string();
            }
            return 0;
        }

        const fcd::ExperimentConfig cfg = load(run_opts);
        if (const int rc = report_violations(fcd::validate(cfg)); rc != 0)
            return rc;
        const auto a = fcd::run(cfg);
        std::cout << "wrote " << a.csv_path << " and " << a.metadata_path << "\n";
        return 0;
    }
    catch (const fcd::ConfigParseError& e)
    {
        std::cerr << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
