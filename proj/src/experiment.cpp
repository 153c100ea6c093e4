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

#include "fcdetect/experiment.hpp"

#include "fcdetect/allocator.hpp"
#include "fcdetect/bounds.hpp"
#include "fcdetect/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace fcd
{

std::string format_csv_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string CsvTable::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        if (i)
            out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                out += ',';
            out += format_csv_value(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace
{

TrialPlan plan_of(const ExperimentConfig& c)
{
    return {c.trials_per_channel, c.channel_realizations, c.seed};
}

CsvTable sweep_power_table(const ExperimentConfig& c, int workers)
{
    const NetworkParams params = network_params(c);
    const SweepResult r = sweep_power(params, c.grid, plan_of(c), c.target_pfa, workers);
    CsvTable t{{"P", "M", "pd_multi", "pd_single", "pd_analytic", "ub_multi", "ub_single"}, {}};
    for (std::size_t k = 0; k < r.grid.size(); ++k)
    {
        t.rows.push_back({r.grid[k], static_cast<double>(params.n_antennas()), r.pd_multi[k], r.pd_single[k],
                          r.pd_analytic_multi[k], r.bound_overlays.at("ub_multi")[k],
                          r.bound_overlays.at("ub_single")[k]});
    }
    return t;
}

CsvTable sweep_antennas_table(const ExperimentConfig& c, int workers)
{
    const NetworkParams params = network_params(c);
    std::vector<int> grid;
    for (double m : c.grid)
        grid.push_back(static_cast<int>(m));
    const SweepResult r = sweep_antennas(params, grid, plan_of(c), c.target_pfa, workers);
    CsvTable t{{"M", "P", "pd_multi", "pd_single", "pd_analytic", "lb_multi", "ub_single"}, {}};
    for (std::size_t k = 0; k < r.grid.size(); ++k)
    {
        t.rows.push_back({r.grid[k], r.power[k], r.pd_multi[k], r.pd_single[k], r.pd_analytic_multi[k],
                          r.bound_overlays.at("lb_multi")[k], r.bound_overlays.at("ub_single")[k]});
    }
    return t;
}

CsvTable optimize_table(const ExperimentConfig& c)
{
    const NetworkParams params = network_params(c);
    CsvTable t{{"P", "sensor", "distance", "meas_noise_var", "x", "g_asymptotic", "lambda"}, {}};
    for (double p : c.grid)
    {
        const WaterfillSolution sol = solve_waterfill(params, p);
        const Eigen::VectorXd x = sol.gains.squared_magnitudes();
        const double g = g_asymptotic(x, params);
        for (int i = 0; i < params.n_sensors(); ++i)
        {
            t.rows.push_back({p, static_cast<double>(i), params.distances()[i], params.meas_noise_vars()[i], x[i],
                              g, sol.lambda});
        }
    }
    return t;
}

// Empirical and analytic operating points at several target PFAs for a fixed
// budget; channels are shared across targets.
CsvTable roc_table(const ExperimentConfig& c, int workers)
{
    const NetworkParams params = network_params(c);
    const NetworkParams single_params = params.with_antennas(1);
    const TrialPlan plan = plan_of(c);
    const std::size_t points = c.grid.size();
    const int channels = plan.channel_realizations;

    struct Cell
    {
        DetectionOutcome multi;
        DetectionOutcome single;
    };
    std::vector<std::vector<Cell>> cells(channels, std::vector<Cell>(points));

    parallel_for(channels, workers, [&](int ch) {
        auto crng = RandomStream::derive(plan.base_seed, streams::kChannelMulti,
                                         static_cast<std::uint64_t>(params.n_antennas()),
                                         static_cast<std::uint64_t>(ch));
        const auto h_multi = draw_channel(params, crng);
        auto srng = RandomStream::derive(plan.base_seed, streams::kChannelSingle, 1, static_cast<std::uint64_t>(ch));
        const auto h_single = draw_channel(single_params, srng);
        const GainVector multi_gains = waterfill_massive(params, c.power_budget);
        const GainVector single_gains(single_antenna_gains(h_single, single_params, c.power_budget).gains.conjugate());
        for (std::size_t k = 0; k < points; ++k)
        {
            const double pfa = c.grid[k];
            const auto key = static_cast<std::uint64_t>(k);
            auto sig = RandomStream::derive(plan.base_seed, streams::kSignal, key, ch, 0);
            auto noi = RandomStream::derive(plan.base_seed, streams::kNoise, key, ch, 0);
            cells[ch][k].multi = estimate_roc(params, h_multi, multi_gains, pfa, plan.trials_per_channel, sig, noi);
            auto sig1 = RandomStream::derive(plan.base_seed, streams::kSignal, key, ch, 1);
            auto noi1 = RandomStream::derive(plan.base_seed, streams::kNoise, key, ch, 1);
            cells[ch][k].single = estimate_roc(single_params, h_single, single_gains, pfa,
                                               plan.trials_per_channel, sig1, noi1);
        }
    });

    CsvTable t{{"target_pfa", "P", "pfa_multi", "pd_multi", "pd_analytic", "pfa_single", "pd_single",
                "pd_analytic_single"},
               {}};
    for (std::size_t k = 0; k < points; ++k)
    {
        std::vector<double> sums(6, 0.0);
        for (int ch = 0; ch < channels; ++ch)
        {
            const Cell& cell = cells[ch][k];
            sums[0] += cell.multi.pfa_empirical;
            sums[1] += cell.multi.pd_empirical;
            sums[2] += cell.multi.pd_analytic;
            sums[3] += cell.single.pfa_empirical;
            sums[4] += cell.single.pd_empirical;
            sums[5] += cell.single.pd_analytic;
        }
        std::vector<double> row{c.grid[k], c.power_budget};
        for (double s : sums)
            row.push_back(s / channels);
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable bounds_table(const ExperimentConfig& c)
{
    const NetworkParams params = network_params(c);
    return {{"target_pfa", "g_upper_bound", "pd_bound_high_power", "pd_bound_low_power"},
            {{c.target_pfa, g_upper_bound(params), pd_bound_high_power(params, c.target_pfa),
              pd_bound_low_power(params, c.target_pfa)}}};
}

void check_finite(const CsvTable& t)
{
    for (const auto& row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (!std::isfinite(row[i]))
            {
                throw NonFiniteResult("non-finite " + t.header[i] + " at grid point " + t.header[0] + "=" +
                                      format_csv_value(row[0]));
            }
        }
    }
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out)
        throw std::runtime_error("failed writing " + path);
}

} // namespace

CsvTable run_experiment(const ExperimentConfig& resolved, int workers)
{
    CsvTable t;
    switch (resolved.experiment)
    {
    case ExperimentKind::SweepPower: t = sweep_power_table(resolved, workers); break;
    case ExperimentKind::SweepAntennas: t = sweep_antennas_table(resolved, workers); break;
    case ExperimentKind::Optimize: t = optimize_table(resolved); break;
    case ExperimentKind::Roc: t = roc_table(resolved, workers); break;
    case ExperimentKind::Bounds: t = bounds_table(resolved); break;
    }
    check_finite(t);
    return t;
}

RunArtifacts run(const ExperimentConfig& config, int workers)
{
    const auto violations = validate(config);
    if (!violations.empty())
    {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations)
            msg += "\n  " + v.field + ": " + v.rule;
        throw ConfigurationError(msg);
    }
    RunArtifacts a;
    a.resolved = resolve(config);
    const CsvTable table = run_experiment(a.resolved, workers);
    a.csv_path = a.resolved.output_path;
    a.metadata_path = a.csv_path + ".meta";
    write_file(a.csv_path, table.to_string());
    write_file(a.metadata_path, serialize_config(a.resolved));
    return a;
}

} // namespace fcd
