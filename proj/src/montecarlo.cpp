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

#include "fcdetect/montecarlo.hpp"

#include "fcdetect/allocator.hpp"
#include "fcdetect/bounds.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace fcd
{

bool DetectionOutcome::pd_agrees(double k) const
{
    const double p = pd_analytic;
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return std::abs(pd_empirical - p) <= k * sd;
}

int default_worker_count()
{
    if (const char* env = std::getenv("FCDETECT_THREADS"))
    {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, int workers, const std::function<void(int)>& body)
{
    if (workers <= 0)
        workers = default_worker_count();
    workers = std::min(workers, count);
    if (workers <= 1)
    {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int i = next++; i < count; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);
}

DetectionOutcome estimate_roc(const NetworkParams& params, const ChannelRealization& channel,
                              const GainVector& gains, const PreparedDetector& detector, long trials,
                              RandomStream& signal_rng, RandomStream& noise_rng)
{
    if (trials < 1)
        throw std::invalid_argument("trial count must be positive");
    long false_alarms = 0;
    long detections = 0;
    for (long t = 0; t < trials; ++t)
    {
        const auto h0 = draw_sample(Hypothesis::H0, channel, gains, params, signal_rng, noise_rng);
        false_alarms += detector.decide(h0.received) == Hypothesis::H1 ? 1 : 0;
        const auto h1 = draw_sample(Hypothesis::H1, channel, gains, params, signal_rng, noise_rng);
        detections += detector.decide(h1.received) == Hypothesis::H1 ? 1 : 0;
    }

    const RocPoint analytic = detector.analytic();
    DetectionOutcome out;
    out.trials = trials;
    out.pd_empirical = static_cast<double>(detections) / static_cast<double>(trials);
    out.pfa_empirical = static_cast<double>(false_alarms) / static_cast<double>(trials);
    out.pd_analytic = analytic.pd;
    out.pfa_analytic = analytic.pfa;
    out.degenerate = analytic.degenerate;
    out.g = detector.g();
    out.threshold = detector.config().threshold;
    return out;
}

DetectionOutcome estimate_roc(const NetworkParams& params, const ChannelRealization& channel,
                              const GainVector& gains, double target_pfa, long trials,
                              RandomStream& signal_rng, RandomStream& noise_rng)
{
    const PreparedDetector detector(channel, gains, params, target_pfa);
    return estimate_roc(params, channel, gains, detector, trials, signal_rng, noise_rng);
}

namespace
{

enum Path : std::uint64_t
{
    kMulti = 0,
    kSingle = 1
};

struct PointOutcome
{
    DetectionOutcome multi;
    DetectionOutcome single;
    double single_low_bound = 0.0;
};

// Trial streams are keyed by the grid value rather than its position, so a
// point's draws do not depend on which other points are in the grid.
DetectionOutcome run_point(const NetworkParams& params, const ChannelRealization& channel,
                           const GainVector& gains, double target_pfa, const TrialPlan& plan,
                           std::uint64_t point_key, int channel_index, Path path)
{
    auto signal = RandomStream::derive(plan.base_seed, streams::kSignal, point_key,
                                       static_cast<std::uint64_t>(channel_index), path);
    auto noise = RandomStream::derive(plan.base_seed, streams::kNoise, point_key,
                                      static_cast<std::uint64_t>(channel_index), path);
    return estimate_roc(params, channel, gains, target_pfa, plan.trials_per_channel, signal, noise);
}

ChannelRealization channel_for(const NetworkParams& params, const TrialPlan& plan, const char* label,
                               int channel_index)
{
    auto rng = RandomStream::derive(plan.base_seed, label,
                                    static_cast<std::uint64_t>(params.n_antennas()),
                                    static_cast<std::uint64_t>(channel_index));
    return draw_channel(params, rng);
}

void validate_plan(const TrialPlan& plan)
{
    if (plan.trials_per_channel < 1 || plan.channel_realizations < 1)
        throw std::invalid_argument("trial plan counts must be positive");
}

// Averages per-channel outcomes in channel order.
SweepResult reduce(const std::vector<double>& grid, const std::vector<double>& power,
                   const std::vector<std::vector<PointOutcome>>& outcomes, const NetworkParams& params,
                   const TrialPlan& plan, double target_pfa)
{
    const std::size_t points = grid.size();
    const double channels = static_cast<double>(plan.channel_realizations);

    SweepResult r;
    r.grid = grid;
    r.power = power;
    r.plan = plan;
    r.target_pfa = target_pfa;
    r.pd_multi.assign(points, 0.0);
    r.pd_single.assign(points, 0.0);
    r.pfa_multi.assign(points, 0.0);
    r.pfa_single.assign(points, 0.0);
    r.pd_analytic_multi.assign(points, 0.0);
    r.pd_analytic_single.assign(points, 0.0);
    std::vector<double> ub_single(points, 0.0);

    for (std::size_t k = 0; k < points; ++k)
    {
        for (int c = 0; c < plan.channel_realizations; ++c)
        {
            const PointOutcome& o = outcomes[c][k];
            r.pd_multi[k] += o.multi.pd_empirical;
            r.pfa_multi[k] += o.multi.pfa_empirical;
            r.pd_analytic_multi[k] += o.multi.pd_analytic;
            r.pd_single[k] += o.single.pd_empirical;
            r.pfa_single[k] += o.single.pfa_empirical;
            r.pd_analytic_single[k] += o.single.pd_analytic;
            ub_single[k] += o.single_low_bound;
            r.agreeing_pairs += (o.multi.pd_agrees() ? 1 : 0) + (o.single.pd_agrees() ? 1 : 0);
            r.total_pairs += 2;
        }
        r.pd_multi[k] /= channels;
        r.pfa_multi[k] /= channels;
        r.pd_analytic_multi[k] /= channels;
        r.pd_single[k] /= channels;
        r.pfa_single[k] /= channels;
        r.pd_analytic_single[k] /= channels;
        ub_single[k] /= channels;
    }

    r.bound_overlays["ub_multi"] = std::vector<double>(points, pd_bound_high_power(params, target_pfa));
    r.bound_overlays["lb_multi"] = std::vector<double>(points, pd_bound_low_power(params, target_pfa));
    r.bound_overlays["ub_single"] = std::move(ub_single);
    return r;
}

} // namespace

SweepResult sweep_power(const NetworkParams& params, const std::vector<double>& power_grid,
                        const TrialPlan& plan, double target_pfa, int workers)
{
    validate_plan(plan);
    for (double p : power_grid)
    {
        if (!(p > 0.0) || !std::isfinite(p))
            throw std::domain_error("power grid values must be positive");
    }
    const NetworkParams single_params = params.with_antennas(1);
    const int channels = plan.channel_realizations;
    std::vector<std::vector<PointOutcome>> outcomes(channels,
                                                    std::vector<PointOutcome>(power_grid.size()));

    parallel_for(channels, workers, [&](int c) {
        const auto h_multi = channel_for(params, plan, streams::kChannelMulti, c);
        const auto h_single = channel_for(single_params, plan, streams::kChannelSingle, c);
        for (std::size_t k = 0; k < power_grid.size(); ++k)
        {
            const double p = power_grid[k];
            const auto key = std::bit_cast<std::uint64_t>(p);
            PointOutcome& o = outcomes[c][k];
            o.multi = run_point(params, h_multi, waterfill_massive(params, p), target_pfa, plan, key, c,
                                kMulti);
            const GainVector single = single_antenna_gains(h_single, single_params, p);
            o.single = run_point(single_params, h_single, GainVector(single.gains.conjugate()),
                                 target_pfa, plan, key, c, kSingle);
            o.single_low_bound = single_antenna_pd_bounds(single_params, h_single, p, target_pfa).low_power;
        }
    });

    return reduce(power_grid, power_grid, outcomes, params, plan, target_pfa);
}

SweepResult sweep_antennas(const NetworkParams& params, const std::vector<int>& antenna_grid,
                           const TrialPlan& plan, double target_pfa, int workers)
{
    validate_plan(plan);
    std::vector<double> grid;
    std::vector<double> power;
    for (int m : antenna_grid)
    {
        if (m < 1)
            throw std::domain_error("antenna grid values must be positive integers");
        grid.push_back(m);
        power.push_back(low_power_budget(params.with_antennas(m)));
    }
    const NetworkParams single_params = params.with_antennas(1);
    const int channels = plan.channel_realizations;
    std::vector<std::vector<PointOutcome>> outcomes(channels,
                                                    std::vector<PointOutcome>(antenna_grid.size()));

    parallel_for(channels, workers, [&](int c) {
        const auto h_single = channel_for(single_params, plan, streams::kChannelSingle, c);
        for (std::size_t k = 0; k < antenna_grid.size(); ++k)
        {
            const NetworkParams pm = params.with_antennas(antenna_grid[k]);
            const double p = power[k];
            const auto key = static_cast<std::uint64_t>(antenna_grid[k]);
            const auto h_multi = channel_for(pm, plan, streams::kChannelMulti, c);
            PointOutcome& o = outcomes[c][k];
            o.multi = run_point(pm, h_multi, waterfill_massive(pm, p), target_pfa, plan, key, c, kMulti);
            const GainVector single = single_antenna_gains(h_single, single_params, p);
            o.single = run_point(single_params, h_single, GainVector(single.gains.conjugate()),
                                 target_pfa, plan, key, c, kSingle);
            o.single_low_bound = single_antenna_pd_bounds(single_params, h_single, p, target_pfa).low_power;
        }
    });

    return reduce(grid, power, outcomes, params, plan, target_pfa);
}

} // namespace fcd
