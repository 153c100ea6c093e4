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

#ifndef FCDETECT_DETECTOR_HPP
#define FCDETECT_DETECTOR_HPP

#include "fcdetect/model.hpp"

namespace fcd
{

// Threshold gamma' of the scalar statistic together with the quantities it was
// derived from.
struct DetectorConfig
{
    double g_value = 0.0;
    double signal_var = 1.0;
    double target_pfa = 0.05;
    double threshold = 0.0;

    static DetectorConfig for_target_pfa(double g_value, double signal_var, double target_pfa);
};

struct RocPoint
{
    double pd = 0.0;
    double pfa = 0.0;
    // g = 0: the statistic is identically zero and the detector never fires.
    bool degenerate = false;
};

// T = sigma_theta^2 |a^H H^H C_w^{-1} y|^2, the rank-one quadratic form
// sigma_theta^2 y^H C_w^{-1} H a a^H H^H C_w^{-1} y written as a squared magnitude.
double test_statistic(const Eigen::VectorXcd& received, const ChannelRealization& channel,
                      const GainVector& gains, const NetworkParams& params);

// gamma' = -sigma_theta^2 g ln(epsilon); epsilon must lie in (0, 1).
double threshold_for_pfa(double g, double signal_var, double epsilon);

// Closed-form operating point of the statistic:
//   pfa = exp(-gamma' / (sigma_theta^2 g))
//   pd  = exp(-gamma' / (sigma_theta^4 g^2 + sigma_theta^2 g))
RocPoint analytic_roc(double g, double signal_var, double threshold);

// H1 iff statistic > threshold; equality decides H0.
Hypothesis decide(double statistic, double threshold);

// Detector bound to one (channel, gains) pair. C_w is factored once; the
// statistic is then O(M) per received vector.
class PreparedDetector
{
public:
    PreparedDetector(const ChannelRealization& channel, const GainVector& gains,
                     const NetworkParams& params, double target_pfa);

    double statistic(const Eigen::VectorXcd& received) const;
    Hypothesis decide(const Eigen::VectorXcd& received) const;

    const DetectorConfig& config() const { return config_; }
    double g() const { return config_.g_value; }
    RocPoint analytic() const { return analytic_roc(config_.g_value, config_.signal_var, config_.threshold); }

private:
    Eigen::VectorXcd whitened_; // C_w^{-1} H a
    DetectorConfig config_;
};

} // namespace fcd

#endif
