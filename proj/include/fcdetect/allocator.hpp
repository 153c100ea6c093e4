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

#ifndef FCDETECT_ALLOCATOR_HPP
#define FCDETECT_ALLOCATOR_HPP

#include "fcdetect/model.hpp"

#include <utility>

namespace fcd
{

struct WaterfillSolution
{
    GainVector gains;    // real, non-negative
    double lambda = 0.0; // KKT multiplier of the budget constraint
    int active = 0;      // sensors with x_i > 0
    int iterations = 0;  // bisection steps used to locate the active set
};

/// Gain allocation maximizing the large-antenna detection quality
/// g_asymptotic(x) over {x >= 0, sum x = P}. The KKT conditions give
///
///   x_i = (sqrt(M c_i / lambda) - c_i)^+ / (M sigma_{v,i}^2),  c_i = sigma_n^2 d_i^{2 alpha},
///
/// with lambda > 0 fixed by the budget. sum_i x_i(lambda) is continuous and
/// strictly decreasing wherever positive, so lambda is bracketed and bisected
/// until the active set is stable; the level is then solved exactly on that set.
WaterfillSolution solve_waterfill(const NetworkParams& params, double power_budget);

GainVector waterfill_massive(const NetworkParams& params, double power_budget);

/// Optimal gains for a single-antenna FC,
///   a = sqrt(P / (h^H B^{-2} h)) B^{-1} h,  B = F V F^H + (sigma_n^2 / P) I,
/// in the convention where the FC receives a^H h theta + a^H F v + n. The gains
/// a sensor applies in the y = H a theta + H D v + n model are the conjugates.
GainVector single_antenna_gains(const ChannelRealization& channel, const NetworkParams& params,
                                double power_budget);

/// g_s(a) = |h^H a|^2 / (a^H F V F^H a + sigma_n^2)
double single_antenna_quality(const Eigen::VectorXcd& h, const Eigen::VectorXcd& a,
                              const NetworkParams& params);

GainVector equal_power_gains(const NetworkParams& params, double power_budget);

// |a_i| = sqrt(sigma_n^2 d_i^{2 alpha} / (2 M sigma_{v,i}^2)); returns the gains
// and the budget they consume.
std::pair<GainVector, double> low_power_suboptimal_gains(const NetworkParams& params);

// Budget consumed by low_power_suboptimal_gains: (1/2M) sum sigma_n^2 d_i^{2 alpha} / sigma_{v,i}^2.
double low_power_budget(const NetworkParams& params);

} // namespace fcd

#endif
