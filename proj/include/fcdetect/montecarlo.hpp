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

#ifndef FCDETECT_MONTECARLO_HPP
#define FCDETECT_MONTECARLO_HPP

#include "fcdetect/detector.hpp"
#include "fcdetect/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fcd
{

struct TrialPlan
{
    int trials_per_channel = 10000;
    int channel_realizations = 300;
    std::uint64_t base_seed = 1;
};

struct DetectionOutcome
{
    double pd_empirical = 0.0;
    double pfa_empirical = 0.0;
    long trials = 0; // per hypothesis
    double pd_analytic = 0.0;
    double pfa_analytic = 0.0;
    double g = 0.0;
    double threshold = 0.0;
    bool degenerate = false;

    // |pd_empirical - pd_analytic| <= k sqrt(pd (1 - pd) / trials)
    bool pd_agrees(double k = 3.0) const;
};

struct SweepResult
{
    std::vector<double> grid;  // P values or M values
    std::vector<double> power; // budget used at each grid point
    std::vector<double> pd_multi;
    std::vector<double> pd_single;
    std::vector<double> pfa_multi;
    std::vector<double> pfa_single;
    std::vector<double> pd_analytic_multi;
    std::vector<double> pd_analytic_single;
    std::map<std::string, std::vector<double>> bound_overlays;

    // (point, channel, path) outcomes whose empirical PD sits within 3 binomial
    // standard deviations of the analytic value.
    long agreeing_pairs = 0;
    long total_pairs = 0;

    TrialPlan plan;
    double target_pfa = 0.05;
};

// Worker count for the trial loops: FCDETECT_THREADS if set and positive,
// otherwise the number of hardware threads.
int default_worker_count();

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
// processed exactly once; callers write results into per-index slots.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

// Monte Carlo operating point of a prepared detector: `trials` draws under
// each hypothesis, with the analytic point attached.
DetectionOutcome estimate_roc(const NetworkParams& params, const ChannelRealization& channel,
                              const GainVector& gains, const PreparedDetector& detector, long trials,
                              RandomStream& signal_rng, RandomStream& noise_rng);

// Convenience form: builds the detector for `target_pfa` from g_exact.
DetectionOutcome estimate_roc(const NetworkParams& params, const ChannelRealization& channel,
                              const GainVector& gains, double target_pfa, long trials,
                              RandomStream& signal_rng, RandomStream& noise_rng);

// PD versus power budget at the antenna count in `params`. The multi-antenna
// FC uses water-filling gains; the single-antenna FC uses its optimal gains on
// an independently drawn channel. Channels are shared across grid points.
SweepResult sweep_power(const NetworkParams& params, const std::vector<double>& power_grid,
                        const TrialPlan& plan, double target_pfa, int workers = 0);

// PD versus antenna count with the budget shrinking as low_power_budget(M).
SweepResult sweep_antennas(const NetworkParams& params, const std::vector<int>& antenna_grid,
                           const TrialPlan& plan, double target_pfa, int workers = 0);

// Stream labels; exposed so tests can reproduce individual draws.
namespace streams
{
inline constexpr const char* kNetwork = "network";
inline constexpr const char* kChannelMulti = "channel-multi";
inline constexpr const char* kChannelSingle = "channel-single";
inline constexpr const char* kSignal = "signal";
inline constexpr const char* kNoise = "noise";
} // namespace streams

} // namespace fcd

#endif
