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

#include "fcdetect/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace fcd
{

namespace
{
void require_pfa(double pfa)
{
    if (!(pfa > 0.0 && pfa < 1.0))
        throw std::domain_error("pfa must lie in (0, 1)");
}

double pd_from_quality(double signal_var, double g, double pfa)
{
    require_pfa(pfa);
    return std::pow(pfa, 1.0 / (1.0 + signal_var * g));
}
} // namespace

double g_upper_bound(const NetworkParams& params)
{
    return params.meas_noise_vars().cwiseInverse().sum();
}

double pd_bound_high_power(double signal_var, double g_bound, double pfa)
{
    return pd_from_quality(signal_var, g_bound, pfa);
}

double pd_bound_high_power(const NetworkParams& params, double pfa)
{
    return pd_bound_high_power(params.signal_var(), g_upper_bound(params), pfa);
}

double pd_bound_low_power(double signal_var, double g_bound, double pfa)
{
    return pd_from_quality(signal_var, g_bound / 3.0, pfa);
}

double pd_bound_low_power(const NetworkParams& params, double pfa)
{
    return pd_bound_low_power(params.signal_var(), g_upper_bound(params), pfa);
}

SingleAntennaBounds single_antenna_pd_bounds(const NetworkParams& params,
                                             const ChannelRealization& channel,
                                             double power_budget, double pfa)
{
    if (!channel.is_single_antenna())
        throw ConfigurationError("single-antenna bounds require M = 1");
    const double hh = channel.matrix.squaredNorm();
    SingleAntennaBounds b;
    b.high_power = pd_bound_high_power(params, pfa);
    b.low_power = pd_from_quality(params.signal_var(), power_budget * hh / params.fc_noise_var(), pfa);
    return b;
}

} // namespace fcd
