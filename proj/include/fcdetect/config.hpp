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

#ifndef FCDETECT_CONFIG_HPP
#define FCDETECT_CONFIG_HPP

#include "fcdetect/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fcd
{

enum class ExperimentKind
{
    SweepPower,
    SweepAntennas,
    Optimize,
    Roc,
    Bounds
};

std::string_view to_string(ExperimentKind kind);

struct Range
{
    double lo = 0.0;
    double hi = 0.0;
};

// Experiment description. Defaults reproduce the published simulation setup:
// N = 10, sigma_theta^2 = 1, sigma_n^2 = 0.3, alpha = 1, d_i ~ U[2, 10],
// sigma_{v,i}^2 ~ U[0.25, 0.5], PFA = 0.05, 10000 trials x 300 channels.
struct ExperimentConfig
{
    ExperimentKind experiment = ExperimentKind::SweepPower;

    int n_sensors = 10;
    int n_antennas = 50;
    double signal_var = 1.0;
    double fc_noise_var = 0.3;
    double path_loss_exp = 1.0;

    // Explicit per-sensor values take precedence over the sampling ranges.
    std::vector<double> meas_noise_vars;
    std::vector<double> distances;
    Range meas_noise_range{0.25, 0.5};
    Range distance_range{2.0, 10.0};

    int trials_per_channel = 10000;
    int channel_realizations = 300;

    // Power budgets (sweep-power, optimize), antenna counts (sweep-antennas)
    // or target PFAs (roc). Empty selects the experiment default.
    std::vector<double> grid;
    double target_pfa = 0.05;
    double power_budget = 1.0; // roc only
    std::uint64_t seed = 1;
    std::string output_path = "results.csv";
};

// Syntax error in a configuration file; what() is "<source>:<line>: <message>".
class ConfigParseError : public std::runtime_error
{
public:
    ConfigParseError(const std::string& source, int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

struct Violation
{
    std::string field;
    std::string rule;
};

// Flat "key = value" text; '#' starts a comment, lists are comma-separated.
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Inverse of parse_config; doubles are written with round-trip precision.
std::string serialize_config(const ExperimentConfig& config);

// Empty iff every field satisfies its rule.
std::vector<Violation> validate(const ExperimentConfig& config);

std::vector<double> default_grid(ExperimentKind kind);

// Copy with the grid filled in and the per-sensor vectors drawn from the
// sampling ranges (seeded by `seed`) when not given explicitly.
ExperimentConfig resolve(const ExperimentConfig& config);

// Requires a resolved, valid config.
NetworkParams network_params(const ExperimentConfig& resolved);

} // namespace fcd

#endif
