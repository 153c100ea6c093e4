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

#ifndef FCDETECT_BOUNDS_HPP
#define FCDETECT_BOUNDS_HPP

#include "fcdetect/model.hpp"

namespace fcd
{

// sum_i 1 / sigma_{v,i}^2: the large-M, large-P limit of g.
double g_upper_bound(const NetworkParams& params);

// pfa^{1 / (1 + sigma_theta^2 sum 1/sigma_v^2)}, reached as P -> infinity.
double pd_bound_high_power(const NetworkParams& params, double pfa);
double pd_bound_high_power(double signal_var, double g_bound, double pfa);

// pfa^{1 / (1 + (sigma_theta^2 / 3) sum 1/sigma_v^2)}: lower bound on PD at
// the optimal allocation for the low-power budget of low_power_suboptimal_gains.
double pd_bound_low_power(const NetworkParams& params, double pfa);
double pd_bound_low_power(double signal_var, double g_bound, double pfa);

struct SingleAntennaBounds
{
    double high_power = 0.0; // pfa^{1 / (1 + sigma_theta^2 sum 1/sigma_v^2)}
    double low_power = 0.0;  // pfa^{1 / (1 + (sigma_theta^2 P / sigma_n^2) h^H h)}
};

SingleAntennaBounds single_antenna_pd_bounds(const NetworkParams& params,
                                             const ChannelRealization& channel,
                                             double power_budget, double pfa);

} // namespace fcd

#endif
