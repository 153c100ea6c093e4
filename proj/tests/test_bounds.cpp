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

#include "fcdetect/allocator.hpp"
#include "fcdetect/bounds.hpp"
#include "fcdetect/detector.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace fcd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("g_upper_bound", "[bounds]")
{
    CHECK(g_upper_bound(NetworkParams(1, 1, 1.0, 0.3, Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Ones(1), 1.0)) ==
          2.0);
    CHECK_THAT(g_upper_bound(NetworkParams(10, 50, 1.0, 0.3, Eigen::VectorXd::Constant(10, 0.25),
                                           Eigen::VectorXd::Constant(10, 3.0), 1.0)),
               WithinRel(40.0, 1e-15));

    auto rng = RandomStream::derive(41, "ub");
    const NetworkParams p = oracle::random_network(rng, 7, 40);
    for (int i = 0; i < 1000; ++i)
    {
        Eigen::VectorXd x(7);
        for (int j = 0; j < 7; ++j)
            x[j] = std::exp(rng.uniform(-10.0, 10.0));
        CHECK(g_asymptotic(x, p) <= g_upper_bound(p));
    }
}

TEST_CASE("multi-antenna PD bounds", "[bounds]")
{
    CHECK(pd_bound_high_power(0.0, 40.0, 0.05) == 0.05);
    CHECK(pd_bound_low_power(0.0, 40.0, 0.05) == 0.05);
    CHECK_THAT(pd_bound_high_power(1.0, 1.0, 0.05), WithinAbs(0.22360679774997896, 1e-15));
    CHECK_THAT(pd_bound_low_power(1.0, 3.0, 0.05), WithinAbs(0.22360679774997896, 1e-15));
    CHECK_THROWS_AS(pd_bound_high_power(1.0, 1.0, 1.0), std::domain_error);

    auto rng = RandomStream::derive(42, "pd-bounds");
    for (int trial = 0; trial < 200; ++trial)
    {
        const NetworkParams p = oracle::random_network(rng, 1 + trial % 10, 50, std::exp(rng.uniform(-3.0, 3.0)));
        const double pfa = rng.uniform(1e-4, 0.99);
        const double lo = pd_bound_low_power(p, pfa);
        const double hi = pd_bound_high_power(p, pfa);
        CHECK(lo <= hi);
        CHECK(lo > pfa);
        CHECK(hi <= 1.0);
    }
}

TEST_CASE("high-power bound dominates the optimized PD at every budget", "[bounds]")
{
    auto rng = RandomStream::derive(43, "dominate");
    const NetworkParams p = oracle::random_network(rng, 10, 50);
    const double bound = pd_bound_high_power(p, 0.05);
    for (double budget = 1e-3; budget < 1e4; budget *= 3.0)
    {
        const double g = g_asymptotic(waterfill_massive(p, budget).squared_magnitudes(), p);
        const double pd = analytic_roc(g, p.signal_var(), threshold_for_pfa(g, p.signal_var(), 0.05)).pd;
        CHECK(pd <= bound);
    }
}

TEST_CASE("low-power bound holds at the implied budget", "[bounds]")
{
    // published parameters at M = 500
    auto rng = RandomStream::derive(44, "lowbound");
    const NetworkParams p = oracle::random_network(rng, 10, 500);
    const double budget = low_power_budget(p);
    const double g = g_asymptotic(waterfill_massive(p, budget).squared_magnitudes(), p);
    const double pd = analytic_roc(g, 1.0, threshold_for_pfa(g, 1.0, 0.05)).pd;
    CHECK(pd >= pd_bound_low_power(p, 0.05));
}

TEST_CASE("single_antenna_pd_bounds", "[bounds][single]")
{
    auto rng = RandomStream::derive(45, "single-bounds");
    const NetworkParams p = oracle::random_network(rng, 10, 1);
    const auto ch = draw_channel(p, rng);

    const auto tiny = single_antenna_pd_bounds(p, ch, 1e-9, 0.05);
    CHECK_THAT(tiny.low_power, WithinAbs(0.05, 1e-6));
    CHECK(tiny.high_power == pd_bound_high_power(p, 0.05));

    const NetworkParams one(1, 1, 1.0, 0.3, Eigen::VectorXd::Constant(1, 0.4), Eigen::VectorXd::Ones(1), 1.0);
    const ChannelRealization unit{Eigen::MatrixXcd::Constant(1, 1, cdouble(1.0))};
    CHECK_THAT(single_antenna_pd_bounds(one, unit, 0.3, 0.05).low_power, WithinRel(std::sqrt(0.05), 1e-14));

    // the low-power expression bounds the optimized single-antenna PD at any budget
    for (double budget = 1e-4; budget < 1e3; budget *= 4.0)
    {
        const GainVector a = single_antenna_gains(ch, p, budget);
        const double gs = single_antenna_quality(ch.as_vector(), a.gains, p);
        const double pd = analytic_roc(gs, 1.0, threshold_for_pfa(gs, 1.0, 0.05)).pd;
        const auto b = single_antenna_pd_bounds(p, ch, budget, 0.05);
        CHECK(pd <= b.low_power * (1 + 1e-12));
        CHECK(pd <= b.high_power * (1 + 1e-12));
        CHECK(b.low_power >= 0.05);
    }

    CHECK_THROWS_AS(single_antenna_pd_bounds(p.with_antennas(3), draw_channel(p.with_antennas(3), rng), 1.0, 0.05),
                    ConfigurationError);
}
