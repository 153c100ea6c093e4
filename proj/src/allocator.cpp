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

#include "fcdetect/allocator.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fcd
{

namespace
{

constexpr int kMaxBisection = 200;
constexpr double kBudgetTol = 1e-9;

void require_budget(double power_budget)
{
    if (!(power_budget > 0.0) || !std::isfinite(power_budget))
        throw std::domain_error("power budget must be positive and finite");
}

// x_i as a function of mu = 1/sqrt(lambda); piecewise linear and nondecreasing.
double share(const NetworkParams& params, int i, double mu)
{
    const double m = params.n_antennas();
    const double c = params.referred_noise(i);
    const double x = (std::sqrt(m * c) * mu - c) / (m * params.meas_noise_vars()[i]);
    return x > 0.0 ? x : 0.0;
}

double total(const NetworkParams& params, double mu)
{
    double s = 0.0;
    for (int i = 0; i < params.n_sensors(); ++i)
        s += share(params, i, mu);
    return s;
}

} // namespace

WaterfillSolution solve_waterfill(const NetworkParams& params, double power_budget)
{
    require_budget(power_budget);
    const int n = params.n_sensors();
    const double m = params.n_antennas();

    // lambda_hi: every sensor is switched off (sqrt(M c_i / lambda) <= c_i).
    // lambda_lo: the sensor with the largest single-sensor level alone gets P.
    double lambda_hi = 0.0;
    double lambda_lo = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double c = params.referred_noise(i);
        lambda_hi = std::max(lambda_hi, m / c);
        const double denom = power_budget * m * params.meas_noise_vars()[i] + c;
        lambda_lo = std::max(lambda_lo, m * c / (denom * denom));
    }
    lambda_lo *= 0.5; // strictly inside, away from rounding at sum = P
    if (!(lambda_lo < lambda_hi) || total(params, 1.0 / std::sqrt(lambda_lo)) < power_budget)
        throw std::logic_error("water-filling bracket does not contain the budget");

    // Bisect in log(lambda) until the budget is met to tolerance.
    double lo = std::log(lambda_lo);
    double hi = std::log(lambda_hi);
    int it = 0;
    double lambda = lambda_lo;
    for (; it < kMaxBisection; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        lambda = std::exp(mid);
        const double s = total(params, 1.0 / std::sqrt(lambda));
        if (std::abs(s - power_budget) <= kBudgetTol * power_budget * 1e-3)
            break;
        if (s > power_budget)
            lo = mid;
        else
            hi = mid;
    }

    // On the active set the budget equation is linear in mu; solve it exactly.
    const double mu0 = 1.0 / std::sqrt(lambda);
    double num = power_budget;
    double den = 0.0;
    int active = 0;
    for (int i = 0; i < n; ++i)
    {
        if (share(params, i, mu0) > 0.0)
        {
            const double c = params.referred_noise(i);
            const double sv = params.meas_noise_vars()[i];
            num += c / (m * sv);
            den += std::sqrt(m * c) / (m * sv);
            ++active;
        }
    }
    assert(active > 0);
    double mu = num / den;
    // The exact level must not switch on a sensor that the bisection left off.
    if (std::abs(total(params, mu) - power_budget) > kBudgetTol * power_budget)
        mu = mu0;

    WaterfillSolution sol;
    Eigen::VectorXd a(n);
    active = 0;
    for (int i = 0; i < n; ++i)
    {
        const double x = share(params, i, mu);
        a[i] = std::sqrt(x);
        active += x > 0.0 ? 1 : 0;
    }
    // Remove the last rounding error so the budget is met to machine precision.
    const double p = a.squaredNorm();
    a *= std::sqrt(power_budget / p);

    sol.gains = GainVector::from_real(a);
    sol.lambda = 1.0 / (mu * mu);
    sol.active = active;
    sol.iterations = it;
    return sol;
}

GainVector waterfill_massive(const NetworkParams& params, double power_budget)
{
    return solve_waterfill(params, power_budget).gains;
}

GainVector single_antenna_gains(const ChannelRealization& channel, const NetworkParams& params,
                                double power_budget)
{
    if (!channel.is_single_antenna())
        throw ConfigurationError("single_antenna_gains requires M = 1");
    if (channel.n_sensors() != params.n_sensors())
        throw ConfigurationError("channel does not match n_sensors");
    require_budget(power_budget);

    const Eigen::VectorXcd h = channel.as_vector();
    // F V F^H is diagonal, so B is a positive diagonal matrix.
    const Eigen::VectorXd b = (h.cwiseAbs2().cwiseProduct(params.meas_noise_vars()))
                                  .array() + params.fc_noise_var() / power_budget;
    const Eigen::VectorXcd binv_h = h.cwiseQuotient(b.cast<cdouble>());
    const double h_binv2_h = binv_h.squaredNorm();
    if (!(h_binv2_h > 0.0))
        return GainVector::zeros(params.n_sensors()); // h = 0: no direction carries signal
    return GainVector(std::sqrt(power_budget / h_binv2_h) * binv_h);
}

double single_antenna_quality(const Eigen::VectorXcd& h, const Eigen::VectorXcd& a,
                              const NetworkParams& params)
{
    if (h.size() != params.n_sensors() || a.size() != params.n_sensors())
        throw ConfigurationError("single_antenna_quality: length mismatch");
    const double signal = std::norm(h.dot(a));
    const double noise =
        (a.cwiseAbs2().cwiseProduct(h.cwiseAbs2()).cwiseProduct(params.meas_noise_vars())).sum() +
        params.fc_noise_var();
    return signal / noise;
}

GainVector equal_power_gains(const NetworkParams& params, double power_budget)
{
    require_budget(power_budget);
    const int n = params.n_sensors();
    return GainVector::from_real(Eigen::VectorXd::Constant(n, std::sqrt(power_budget / n)));
}

double low_power_budget(const NetworkParams& params)
{
    double s = 0.0;
    for (int i = 0; i < params.n_sensors(); ++i)
        s += params.referred_noise(i) / params.meas_noise_vars()[i];
    return s / (2.0 * params.n_antennas());
}

std::pair<GainVector, double> low_power_suboptimal_gains(const NetworkParams& params)
{
    const int n = params.n_sensors();
    const double m = params.n_antennas();
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i)
        a[i] = std::sqrt(params.referred_noise(i) / (2.0 * m * params.meas_noise_vars()[i]));
    return {GainVector::from_real(a), a.squaredNorm()};
}

} // namespace fcd
