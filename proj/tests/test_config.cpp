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

#include "catch_amalgamated.hpp"

#include "fcdetect/config.hpp"
#include "fcdetect/experiment.hpp"

#include <algorithm>
#include <cmath>

using namespace fcd;

namespace
{
bool names(const std::vector<Violation>& v, const std::string& field)
{
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.field == field; });
}
} // namespace

TEST_CASE("parse_config reads flat key = value text", "[config]")
{
    const auto cfg = parse_config(R"(# sweep over M
experiment = sweep-antennas
n_sensors = 3
distances = 2, 4.5, 8   # meters
meas_noise_vars = 0.3,0.4,0.5
grid = 10, 20, 40
target_pfa = 0.01
seed = 77
output_path = out/m.csv
)");
    CHECK(cfg.experiment == ExperimentKind::SweepAntennas);
    CHECK(cfg.n_sensors == 3);
    CHECK(cfg.distances == std::vector<double>{2.0, 4.5, 8.0});
    CHECK(cfg.meas_noise_vars == std::vector<double>{0.3, 0.4, 0.5});
    CHECK(cfg.grid == std::vector<double>{10, 20, 40});
    CHECK(cfg.target_pfa == 0.01);
    CHECK(cfg.seed == 77);
    CHECK(cfg.output_path == "out/m.csv");
    // untouched keys keep their defaults
    CHECK(cfg.fc_noise_var == 0.3);
    CHECK(cfg.trials_per_channel == 10000);
}

TEST_CASE("parse errors carry the line number", "[config]")
{
    auto line_of = [](const char* text) {
        try
        {
            parse_config(text, "exp.cfg");
        }
        catch (const ConfigParseError& e)
        {
            CHECK(std::string(e.what()).rfind("exp.cfg:", 0) == 0);
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("n_sensors = 3\n\nbogus = 1\n") == 3);
    CHECK(line_of("n_sensors = three\n") == 1);
    CHECK(line_of("seed = 1\nseed = 2\n") == 2);
    CHECK(line_of("# comment\njust words\n") == 2);
    CHECK(line_of("grid = 1,,2\n") == 1);
    CHECK(line_of("experiment = fig3\n") == 1);
}

TEST_CASE("validate", "[config]")
{
    SECTION("defaults are valid")
    {
        CHECK(validate(ExperimentConfig{}).empty());
        for (auto k : {ExperimentKind::SweepPower, ExperimentKind::SweepAntennas, ExperimentKind::Optimize,
                       ExperimentKind::Roc, ExperimentKind::Bounds})
        {
            ExperimentConfig c;
            c.experiment = k;
            CHECK(validate(c).empty());
        }
    }

    SECTION("zero FC noise")
    {
        ExperimentConfig c;
        c.fc_noise_var = 0.0;
        const auto v = validate(c);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field == "fc_noise_var");
    }

    SECTION("per-sensor vector length")
    {
        ExperimentConfig c;
        c.meas_noise_vars = {0.3, 0.3};
        const auto v = validate(c);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field == "meas_noise_vars");
        CHECK(v[0].rule.find("length") != std::string::npos);
    }

    SECTION("grid rules")
    {
        ExperimentConfig c;
        c.grid = {1.0, 0.5};
        CHECK(names(validate(c), "grid"));
        c.grid = {0.0, 1.0};
        CHECK(names(validate(c), "grid"));
        c.experiment = ExperimentKind::SweepAntennas;
        c.grid = {10, 20.5};
        CHECK(names(validate(c), "grid"));
        c.experiment = ExperimentKind::Roc;
        c.grid = {0.1, 1.0};
        CHECK(names(validate(c), "grid"));
    }

    SECTION("ranges and counts")
    {
        ExperimentConfig c;
        c.distance_range = {0.0, 5.0};
        c.meas_noise_range = {0.5, 0.25};
        c.trials_per_channel = 0;
        c.target_pfa = 1.0;
        const auto v = validate(c);
        CHECK(names(v, "distance_range"));
        CHECK(names(v, "meas_noise_range"));
        CHECK(names(v, "trials_per_channel"));
        CHECK(names(v, "target_pfa"));
    }
}

TEST_CASE("resolve samples per-sensor values reproducibly", "[config]")
{
    ExperimentConfig c;
    const auto a = resolve(c);
    const auto b = resolve(c);
    REQUIRE(a.distances.size() == 10);
    REQUIRE(a.meas_noise_vars.size() == 10);
    CHECK(a.distances == b.distances);
    CHECK(a.meas_noise_vars == b.meas_noise_vars);
    for (int i = 0; i < 10; ++i)
    {
        CHECK(a.distances[i] >= 2.0);
        CHECK(a.distances[i] <= 10.0);
        CHECK(a.meas_noise_vars[i] >= 0.25);
        CHECK(a.meas_noise_vars[i] <= 0.5);
    }
    CHECK(a.grid == default_grid(ExperimentKind::SweepPower));

    c.seed = 2;
    CHECK(resolve(c).distances != a.distances);

    c.distances = std::vector<double>(10, 3.0);
    CHECK(resolve(c).distances == c.distances);
}

TEST_CASE("serialize_config round-trips exactly", "[config]")
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Roc;
    c.power_budget = 0.1 + 0.2;
    const auto r = resolve(c);
    const auto back = parse_config(serialize_config(r));
    CHECK(back.distances == r.distances);
    CHECK(back.meas_noise_vars == r.meas_noise_vars);
    CHECK(back.grid == r.grid);
    CHECK(back.power_budget == r.power_budget);
    CHECK(back.experiment == r.experiment);
    CHECK(serialize_config(back) == serialize_config(r));
}

TEST_CASE("bounds experiment table", "[config][experiment]")
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Bounds;
    c.meas_noise_vars = std::vector<double>(10, 0.25);
    const CsvTable t = run_experiment(resolve(c));
    REQUIRE(t.rows.size() == 1);
    CHECK(t.header == std::vector<std::string>{"target_pfa", "g_upper_bound", "pd_bound_high_power",
                                               "pd_bound_low_power"});
    CHECK(t.rows[0][0] == 0.05);
    CHECK(t.rows[0][1] == 40.0);
    CHECK(std::abs(t.rows[0][2] - std::pow(0.05, 1.0 / 41.0)) < 1e-15);
    CHECK(std::abs(t.rows[0][3] - std::pow(0.05, 3.0 / 43.0)) < 1e-15);
    CHECK(t.to_string().rfind("target_pfa,g_upper_bound,pd_bound_high_power,pd_bound_low_power\n0.05,40,", 0) == 0);
}

TEST_CASE("optimize experiment table", "[config][experiment]")
{
    ExperimentConfig c;
    c.experiment = ExperimentKind::Optimize;
    c.grid = {0.5, 5.0};
    const CsvTable t = run_experiment(resolve(c));
    REQUIRE(t.rows.size() == 20);
    double sum = 0.0;
    for (int i = 0; i < 10; ++i)
        sum += t.rows[i][4];
    CHECK(std::abs(sum - 0.5) < 1e-9);
}

TEST_CASE("CSV values keep at least ten significant digits", "[experiment]")
{
    CHECK(format_csv_value(0.123456789012345) == "0.123456789012345");
    CHECK(format_csv_value(50) == "50");
    CsvTable t{{"a", "b"}, {{1.0, 0.25}}};
    CHECK(t.to_string() == "a,b\n1,0.25\n");
}
