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

#include "fcdetect/config.hpp"

#include "fcdetect/montecarlo.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace fcd
{

std::string_view to_string(ExperimentKind kind)
{
    switch (kind)
    {
    case ExperimentKind::SweepPower: return "sweep-power";
    case ExperimentKind::SweepAntennas: return "sweep-antennas";
    case ExperimentKind::Optimize: return "optimize";
    case ExperimentKind::Roc: return "roc";
    case ExperimentKind::Bounds: return "bounds";
    }
    return "unknown";
}

ConfigParseError::ConfigParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line)
{
}

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out)
{
    s = trim(s);
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

template <typename Int>
bool parse_int(std::string_view s, Int& out)
{
    s = trim(s);
    if (s.empty())
        return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_list(std::string_view s, std::vector<double>& out)
{
    out.clear();
    s = trim(s);
    if (s.empty())
        return true;
    while (true)
    {
        const auto comma = s.find(',');
        double v = 0.0;
        if (!parse_double(s.substr(0, comma), v))
            return false;
        out.push_back(v);
        if (comma == std::string_view::npos)
            return true;
        s.remove_prefix(comma + 1);
    }
}

bool parse_range(std::string_view s, Range& out)
{
    std::vector<double> v;
    if (!parse_list(s, v) || v.size() != 2)
        return false;
    out = {v[0], v[1]};
    return true;
}

bool parse_kind(std::string_view s, ExperimentKind& out)
{
    for (auto k : {ExperimentKind::SweepPower, ExperimentKind::SweepAntennas, ExperimentKind::Optimize,
                   ExperimentKind::Roc, ExperimentKind::Bounds})
    {
        if (to_string(k) == s)
        {
            out = k;
            return true;
        }
    }
    return false;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            s += ", ";
        s += format_double(v[i]);
    }
    return s;
}

using Setter = std::function<bool(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"experiment", [](auto& c, auto v) { return parse_kind(v, c.experiment); }},
        {"n_sensors", [](auto& c, auto v) { return parse_int(v, c.n_sensors); }},
        {"n_antennas", [](auto& c, auto v) { return parse_int(v, c.n_antennas); }},
        {"signal_var", [](auto& c, auto v) { return parse_double(v, c.signal_var); }},
        {"fc_noise_var", [](auto& c, auto v) { return parse_double(v, c.fc_noise_var); }},
        {"path_loss_exp", [](auto& c, auto v) { return parse_double(v, c.path_loss_exp); }},
        {"meas_noise_vars", [](auto& c, auto v) { return parse_list(v, c.meas_noise_vars); }},
        {"distances", [](auto& c, auto v) { return parse_list(v, c.distances); }},
        {"meas_noise_range", [](auto& c, auto v) { return parse_range(v, c.meas_noise_range); }},
        {"distance_range", [](auto& c, auto v) { return parse_range(v, c.distance_range); }},
        {"trials_per_channel", [](auto& c, auto v) { return parse_int(v, c.trials_per_channel); }},
        {"channel_realizations", [](auto& c, auto v) { return parse_int(v, c.channel_realizations); }},
        {"grid", [](auto& c, auto v) { return parse_list(v, c.grid); }},
        {"target_pfa", [](auto& c, auto v) { return parse_double(v, c.target_pfa); }},
        {"power_budget", [](auto& c, auto v) { return parse_double(v, c.power_budget); }},
        {"seed", [](auto& c, auto v) { return parse_int(v, c.seed); }},
        {"output_path",
         [](auto& c, auto v) {
             c.output_path = std::string(v);
             return !v.empty();
         }},
    };
    return table;
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

} // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source)
{
    ExperimentConfig cfg;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigParseError(source, line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigParseError(source, line_no, "unknown key '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second)
            throw ConfigParseError(source, line_no, "duplicate key '" + std::string(key) + "'");
        if (!it->second(cfg, value))
            throw ConfigParseError(source, line_no,
                                   "invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigParseError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string serialize_config(const ExperimentConfig& c)
{
    std::ostringstream out;
    out << "experiment = " << to_string(c.experiment) << "\n";
    out << "n_sensors = " << c.n_sensors << "\n";
    out << "n_antennas = " << c.n_antennas << "\n";
    out << "signal_var = " << format_double(c.signal_var) << "\n";
    out << "fc_noise_var = " << format_double(c.fc_noise_var) << "\n";
    out << "path_loss_exp = " << format_double(c.path_loss_exp) << "\n";
    if (!c.meas_noise_vars.empty())
        out << "meas_noise_vars = " << format_list(c.meas_noise_vars) << "\n";
    if (!c.distances.empty())
        out << "distances = " << format_list(c.distances) << "\n";
    out << "meas_noise_range = " << format_list({c.meas_noise_range.lo, c.meas_noise_range.hi}) << "\n";
    out << "distance_range = " << format_list({c.distance_range.lo, c.distance_range.hi}) << "\n";
    out << "trials_per_channel = " << c.trials_per_channel << "\n";
    out << "channel_realizations = " << c.channel_realizations << "\n";
    if (!c.grid.empty())
        out << "grid = " << format_list(c.grid) << "\n";
    out << "target_pfa = " << format_double(c.target_pfa) << "\n";
    out << "power_budget = " << format_double(c.power_budget) << "\n";
    out << "seed = " << c.seed << "\n";
    out << "output_path = " << c.output_path << "\n";
    return out.str();
}

std::vector<double> default_grid(ExperimentKind kind)
{
    switch (kind)
    {
    case ExperimentKind::SweepPower:
        return {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0};
    case ExperimentKind::SweepAntennas:
        return {50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    case ExperimentKind::Optimize: return {0.1, 1.0, 10.0};
    case ExperimentKind::Roc: return {0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
    case ExperimentKind::Bounds: return {};
    }
    return {};
}

std::vector<Violation> validate(const ExperimentConfig& c)
{
    std::vector<Violation> v;
    auto add = [&](std::string field, std::string rule) { v.push_back({std::move(field), std::move(rule)}); };

    if (c.n_sensors < 1)
        add("n_sensors", "must be a positive integer");
    if (c.n_antennas < 1)
        add("n_antennas", "must be a positive integer");
    if (!positive(c.signal_var))
        add("signal_var", "must be > 0");
    if (!positive(c.fc_noise_var))
        add("fc_noise_var", "must be > 0");
    if (!positive(c.path_loss_exp))
        add("path_loss_exp", "must be > 0");

    auto check_vector = [&](const std::vector<double>& values, const Range& range, const std::string& name,
                            const std::string& range_name) {
        if (!values.empty())
        {
            if (c.n_sensors >= 1 && values.size() != static_cast<std::size_t>(c.n_sensors))
                add(name, "length must equal n_sensors");
            for (double x : values)
            {
                if (!positive(x))
                {
                    add(name, "entries must be > 0");
                    break;
                }
            }
        }
        else if (!(positive(range.lo) && std::isfinite(range.hi) && range.lo <= range.hi))
        {
            add(range_name, "must be a nonempty interval with a positive lower bound");
        }
    };
    check_vector(c.meas_noise_vars, c.meas_noise_range, "meas_noise_vars", "meas_noise_range");
    check_vector(c.distances, c.distance_range, "distances", "distance_range");

    if (c.trials_per_channel < 1)
        add("trials_per_channel", "must be >= 1");
    if (c.channel_realizations < 1)
        add("channel_realizations", "must be >= 1");
    if (!(c.target_pfa > 0.0 && c.target_pfa < 1.0))
        add("target_pfa", "must lie in (0, 1)");
    if (c.experiment == ExperimentKind::Roc && !positive(c.power_budget))
        add("power_budget", "must be > 0");
    if (c.output_path.empty())
        add("output_path", "must be nonempty");

    const std::vector<double> grid = c.grid.empty() ? default_grid(c.experiment) : c.grid;
    if (c.experiment != ExperimentKind::Bounds)
    {
        if (grid.empty())
            add("grid", "must be nonempty");
        for (std::size_t i = 1; i < grid.size(); ++i)
        {
            if (!(grid[i] > grid[i - 1]))
            {
                add("grid", "must be strictly increasing");
                break;
            }
        }
        for (double g : grid)
        {
            bool ok = positive(g);
            if (c.experiment == ExperimentKind::SweepAntennas)
                ok = ok && g == std::floor(g) && g <= 1e6;
            if (c.experiment == ExperimentKind::Roc)
                ok = ok && g < 1.0;
            if (!ok)
            {
                add("grid", c.experiment == ExperimentKind::SweepAntennas ? "values must be positive integers"
                            : c.experiment == ExperimentKind::Roc       ? "values must lie in (0, 1)"
                                                                        : "values must be > 0");
                break;
            }
        }
    }
    return v;
}

ExperimentConfig resolve(const ExperimentConfig& config)
{
    ExperimentConfig r = config;
    if (r.grid.empty())
        r.grid = default_grid(r.experiment);
    if (r.distances.empty())
    {
        auto rng = RandomStream::derive(r.seed, streams::kNetwork, 0);
        for (int i = 0; i < r.n_sensors; ++i)
            r.distances.push_back(rng.uniform(r.distance_range.lo, r.distance_range.hi));
    }
    if (r.meas_noise_vars.empty())
    {
        auto rng = RandomStream::derive(r.seed, streams::kNetwork, 1);
        for (int i = 0; i < r.n_sensors; ++i)
            r.meas_noise_vars.push_back(rng.uniform(r.meas_noise_range.lo, r.meas_noise_range.hi));
    }
    return r;
}

NetworkParams network_params(const ExperimentConfig& r)
{
    const Eigen::Map<const Eigen::VectorXd> noise(r.meas_noise_vars.data(),
                                                  static_cast<Eigen::Index>(r.meas_noise_vars.size()));
    const Eigen::Map<const Eigen::VectorXd> dist(r.distances.data(),
                                                 static_cast<Eigen::Index>(r.distances.size()));
    return NetworkParams(r.n_sensors, r.n_antennas, r.signal_var, r.fc_noise_var, noise, dist,
                         r.path_loss_exp);
}

} // namespace fcd
