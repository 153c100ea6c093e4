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

#include "fcdetect/detector.hpp"

#include <cmath>

namespace fcd
{

DetectorConfig DetectorConfig::for_target_pfa(double g_value, double signal_var, double target_pfa)
{
    return {g_value, signal_var, target_pfa, threshold_for_pfa(g_value, signal_var, target_pfa)};
}

double test_statistic(const Eigen::VectorXcd& received, const ChannelRealization& channel,
                      const GainVector& gains, const NetworkParams& params)
{
    check_dimensions(channel, gains, params);
    if (received.size() != channel.n_antennas())
        throw ConfigurationError("received vector length must equal n_antennas");
    const NoiseCovarianceFactor factor(channel, gains, params);
    const Eigen::VectorXcd w = factor.solve(channel.matrix * gains.gains);
    return params.signal_var() * std::norm(w.dot(received));
}

double threshold_for_pfa(double g, double signal_var, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("target PFA must lie in (0, 1)");
    if (g < 0.0)
        throw std::domain_error("g must be non-negative");
    if (g == 0.0)
        return 0.0;
    return -signal_var * g * std::log(epsilon);
}

RocPoint analytic_roc(double g, double signal_var, double threshold)
{
    if (g < 0.0 || threshold < 0.0)
        throw std::domain_error("analytic_roc requires g >= 0 and threshold >= 0");
    if (g == 0.0)
        return {0.0, 0.0, true};
    const double sg = signal_var * g;
    RocPoint r;
    r.pfa = std::exp(-threshold / sg);
    r.pd = std::exp(-threshold / (sg * sg + sg));
    return r;
}

Hypothesis decide(double statistic, double threshold)
{
    return statistic > threshold ? Hypothesis::H1 : Hypothesis::H0;
}

PreparedDetector::PreparedDetector(const ChannelRealization& channel, const GainVector& gains,
                                   const NetworkParams& params, double target_pfa)
{
    const NoiseCovarianceFactor factor(channel, gains, params);
    const Eigen::VectorXcd ha = channel.matrix * gains.gains;
    whitened_ = factor.solve(ha);
    const double g = std::max(0.0, ha.dot(whitened_).real());
    config_ = DetectorConfig::for_target_pfa(g, params.signal_var(), target_pfa);
}

double PreparedDetector::statistic(const Eigen::VectorXcd& received) const
{
    return config_.signal_var * std::norm(whitened_.dot(received));
}

Hypothesis PreparedDetector::decide(const Eigen::VectorXcd& received) const
{
    return fcd::decide(statistic(received), config_.threshold);
}

} // namespace fcd
