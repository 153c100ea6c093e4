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

#ifndef FCDETECT_EXPERIMENT_HPP
#define FCDETECT_EXPERIMENT_HPP

#include "fcdetect/config.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fcd
{

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    // Comma-separated, LF line endings, header row first.
    std::string to_string() const;
};

// A computed value is NaN or infinite; what() names the grid point.
class NonFiniteResult : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Runs the experiment named in a resolved config and returns its table.
CsvTable run_experiment(const ExperimentConfig& resolved, int workers = 0);

struct RunArtifacts
{
    std::string csv_path;
    std::string metadata_path;
    ExperimentConfig resolved;
};

// Validates, resolves, runs and writes `output_path` plus `output_path.meta`.
// The metadata sidecar is a config file that reproduces the CSV exactly.
// Nothing is written when validation fails or a result is non-finite.
RunArtifacts run(const ExperimentConfig& config, int workers = 0);

std::string format_csv_value(double v);

} // namespace fcd

#endif
