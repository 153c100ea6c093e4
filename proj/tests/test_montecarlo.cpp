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
#include "fcdetect/montecarlo.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

using namespace fcd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

double binomial_sd(double p, double n)
{
    return std::sqrt(p * (1.0 - p) / n);
}

NetworkParams published_network(std::uint64_t seed, int m)
{
    auto rng = RandomStream::derive(seed, "published");
    return oracle::random_network(rng, 10, m);
}

} // namespace

TEST_CASE("parallel_for visits every index once and rethrows", "[montecarlo]")
{
    std::vector<std::atomic<int>> hits(257);
    parallel_for(257, 4, [&](int i) { hits[i]++; });
    for (auto& h : hits)
        CHECK(h.load() == 1);

    CHECK_THROWS_AS(parallel_for(10, 3, [](int i) {
                        if (i == 7)
                            throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("estimate_roc with zero gains cannot separate the hypotheses", "[montecarlo]")
{
    const NetworkParams p = published_network(51, 8);
    auto crng = RandomStream::derive(51, "ch");
    const auto ch = draw_channel(p, crng);
    auto sig = RandomStream::derive(51, "signal");
    auto noi = RandomStream::derive(51, "noise");
    const auto out = estimate_roc(p, ch, GainVector::zeros(10), 0.05, 5000, sig, noi);
    CHECK(out.degenerate);
    CHECK(std::abs(out.pd_empirical - out.pfa_empirical) <= 3.0 * std::sqrt(2.0) * 0.5 / std::sqrt(5000.0));
    CHECK(out.pd_analytic == 0.0);
}

TEST_CASE("estimate_roc agrees with the closed form", "[montecarlo][statistical]")
{
    const NetworkParams p = published_network(52, 50);
    int agree = 0;
    for (int c = 0; c < 10; ++c)
    {
        auto crng = RandomStream::derive(52, "ch", c);
        const auto ch = draw_channel(p, crng);
        auto sig = RandomStream::derive(52, "signal", c);
        auto noi = RandomStream::derive(52, "noise", c);
        const auto out = estimate_roc(p, ch, waterfill_massive(p, 0.5), 0.05, 10000, sig, noi);
        CHECK_THAT(out.pfa_analytic, WithinRel(0.05, 1e-12));
        CHECK(std::abs(out.pfa_empirical - 0.05) <= 3.0 * binomial_sd(0.05, 10000));
        CHECK(out.pd_analytic > 0.05);
        agree += out.pd_agrees() ? 1 : 0;
    }
    // 3-sigma agreement; one miss in ten is within chance
    CHECK(agree >= 9);
}

TEST_CASE("sweep_power shapes and overlays", "[montecarlo][sweep]")
{
    const NetworkParams p = published_network(53, 20);
    const TrialPlan plan{200, 4, 99};

    const SweepResult one = sweep_power(p, {0.3}, plan, 0.05, 1);
    CHECK(one.grid.size() == 1);
    CHECK(one.pd_multi.size() == 1);
    CHECK(one.pd_single.size() == 1);
    CHECK(one.pd_analytic_multi.size() == 1);
    CHECK(one.bound_overlays.at("ub_multi").size() == 1);
    CHECK(one.bound_overlays.at("ub_multi")[0] == pd_bound_high_power(p, 0.05));

    const SweepResult r = sweep_power(p, {0.01, 0.1, 1.0, 10.0}, plan, 0.05, 1);
    for (std::size_t k = 0; k < r.grid.size(); ++k)
    {
        for (double v : {r.pd_multi[k], r.pd_single[k], r.pfa_multi[k], r.pfa_single[k], r.pd_analytic_multi[k]})
        {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    CHECK(r.total_pairs == 2 * 4 * 4);

    CHECK_THROWS_AS(sweep_power(p, {0.0}, plan, 0.05, 1), std::domain_error);
    CHECK_THROWS_AS(sweep_power(p, {1.0}, TrialPlan{0, 1, 1}, 0.05, 1), std::invalid_argument);
}

TEST_CASE("sweeps are deterministic across worker counts", "[montecarlo][determinism]")
{
    const NetworkParams p = published_network(54, 16);
    const TrialPlan plan{300, 7, 2024};
    const SweepResult a = sweep_power(p, {0.05, 0.5, 5.0}, plan, 0.05, 1);
    const SweepResult b = sweep_power(p, {0.05, 0.5, 5.0}, plan, 0.05, 4);
    CHECK(a.pd_multi == b.pd_multi);
    CHECK(a.pd_single == b.pd_single);
    CHECK(a.pd_analytic_multi == b.pd_analytic_multi);
    CHECK(a.bound_overlays == b.bound_overlays);

    const SweepResult c = sweep_antennas(p, {4, 8, 16}, plan, 0.05, 1);
    const SweepResult d = sweep_antennas(p, {4, 8, 16}, plan, 0.05, 3);
    CHECK(c.pd_multi == d.pd_multi);
    CHECK(c.pd_single == d.pd_single);
    CHECK(c.power == d.power);
}

TEST_CASE("channel draws do not depend on trial counts or the grid", "[montecarlo][determinism]")
{
    const NetworkParams p = published_network(55, 12);
    const SweepResult a = sweep_power(p, {0.2, 2.0}, TrialPlan{100, 5, 7}, 0.05, 1);
    const SweepResult b = sweep_power(p, {0.2, 2.0}, TrialPlan{250, 5, 7}, 0.05, 1);
    // analytic PD is a function of the channels only
    CHECK(a.pd_analytic_multi == b.pd_analytic_multi);
    CHECK(a.pd_analytic_single == b.pd_analytic_single);

    const SweepResult c = sweep_power(p, {2.0}, TrialPlan{100, 5, 7}, 0.05, 1);
    CHECK(c.pd_multi[0] == a.pd_multi[1]);
    CHECK(c.pd_single[0] == a.pd_single[1]);
}

TEST_CASE("sweep_antennas uses the shrinking low-power budget", "[montecarlo][sweep]")
{
    const NetworkParams p = published_network(56, 50);
    const SweepResult r = sweep_antennas(p, {10, 20, 40}, TrialPlan{200, 3, 5}, 0.05, 1);
    REQUIRE(r.power.size() == 3);
    CHECK_THAT(r.power[0], WithinRel(low_power_budget(p.with_antennas(10)), 1e-15));
    CHECK_THAT(r.power[1], WithinRel(r.power[0] / 2.0, 1e-14));
    CHECK_THAT(r.power[2], WithinRel(r.power[0] / 4.0, 1e-14));
    CHECK(r.bound_overlays.at("lb_multi")[0] == pd_bound_low_power(p, 0.05));
    CHECK(r.bound_overlays.at("ub_single").size() == 3);
}

TEST_CASE("one-antenna multi path reduces to the single-antenna model", "[montecarlo][statistical]")
{
    const NetworkParams p = published_network(57, 50);
    const TrialPlan plan{4000, 20, 31};
    const SweepResult r = sweep_antennas(p, {1}, plan, 0.05, 1);

    // Recompute the analytic PD through the single-antenna quality functional
    // on the same channels and gains.
    const NetworkParams p1 = p.with_antennas(1);
    const GainVector gains = waterfill_massive(p1, r.power[0]);
    double pd = 0.0;
    for (int c = 0; c < plan.channel_realizations; ++c)
    {
        auto rng = RandomStream::derive(plan.base_seed, streams::kChannelMulti, 1, c);
        const auto ch = draw_channel(p1, rng);
        // gains are real, so conjugation is the identity
        const double gs = single_antenna_quality(ch.as_vector(), gains.gains, p1);
        pd += analytic_roc(gs, 1.0, threshold_for_pfa(gs, 1.0, 0.05)).pd;
    }
    pd /= plan.channel_realizations;
    CHECK_THAT(r.pd_analytic_multi[0], WithinRel(pd, 1e-12));
    const double n = static_cast<double>(plan.trials_per_channel) * plan.channel_realizations;
    CHECK(std::abs(r.pd_multi[0] - pd) <= 3.0 * binomial_sd(pd, n));
}

TEST_CASE("empirical PD tracks the closed form across a sweep", "[montecarlo][statistical]")
{
    const NetworkParams p = published_network(58, 30);
    const SweepResult r = sweep_power(p, {0.03, 0.3, 3.0, 30.0}, TrialPlan{2000, 25, 17}, 0.05);
    INFO(r.agreeing_pairs << " of " << r.total_pairs);
    // 3-sigma agreement holds for ~99.7% of pairs; allow the binomial tail
    CHECK(r.agreeing_pairs >= r.total_pairs - 3);
}

TEST_CASE("power sweep at the published channel count", "[montecarlo][paper]")
{
    const NetworkParams p = published_network(59, 50);
    const SweepResult r = sweep_power(p, {0.1, 100.0}, TrialPlan{1000, 300, 59}, 0.05);
    INFO("P=0.1 multi " << r.pd_multi[0] << " single " << r.pd_single[0] << "; P=100 multi " << r.pd_multi[1]);
    CHECK(r.pd_multi[0] / r.pd_single[0] >= 1.5);
    CHECK(std::abs(r.pd_multi[1] - pd_bound_high_power(p, 0.05)) <= 0.02);
}

TEST_CASE("antenna sweep from 50 to 500", "[montecarlo][paper]")
{
    const NetworkParams p = published_network(60, 50);
    const std::vector<int> grid{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    const TrialPlan plan{1000, 20, 60};
    const SweepResult r = sweep_antennas(p, grid, plan, 0.05);
    const double n = static_cast<double>(plan.trials_per_channel) * plan.channel_realizations;

    const auto [lo, hi] = std::minmax_element(r.pd_multi.begin(), r.pd_multi.end());
    CHECK(*hi - *lo < 0.05);
    for (double v : r.pd_multi)
        CHECK(v >= pd_bound_low_power(p, 0.05) - 0.03);
    for (std::size_t k = 1; k < grid.size(); ++k)
    {
        const double sd = std::hypot(binomial_sd(r.pd_single[k], n), binomial_sd(r.pd_single[k - 1], n));
        CHECK(r.pd_single[k] <= r.pd_single[k - 1] + 3.0 * sd);
    }
}
