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

#include "fcdetect/model.hpp"

#include <cmath>
#include <sstream>

namespace fcd
{

NetworkParams::NetworkParams(int n_sensors, int n_antennas, double signal_var, double fc_noise_var,
                             Eigen::VectorXd meas_noise_vars, Eigen::VectorXd distances,
                             double path_loss_exp)
    : n_sensors_(n_sensors), n_antennas_(n_antennas), signal_var_(signal_var),
      fc_noise_var_(fc_noise_var), meas_noise_vars_(std::move(meas_noise_vars)),
      distances_(std::move(distances)), path_loss_exp_(path_loss_exp)
{
    if (n_sensors_ < 1)
        throw ConfigurationError("n_sensors must be positive");
    if (n_antennas_ < 1)
        throw ConfigurationError("n_antennas must be positive");
    if (!(signal_var_ > 0.0) || !std::isfinite(signal_var_))
        throw ConfigurationError("signal_var must be positive");
    if (!(fc_noise_var_ > 0.0) || !std::isfinite(fc_noise_var_))
        throw ConfigurationError("fc_noise_var must be positive");
    if (!(path_loss_exp_ > 0.0) || !std::isfinite(path_loss_exp_))
        throw ConfigurationError("path_loss_exp must be positive");
    if (meas_noise_vars_.size() != n_sensors_)
        throw ConfigurationError("meas_noise_vars must have length n_sensors");
    if (distances_.size() != n_sensors_)
        throw ConfigurationError("distances must have length n_sensors");
    for (int i = 0; i < n_sensors_; ++i)
    {
        if (!(meas_noise_vars_[i] > 0.0) || !std::isfinite(meas_noise_vars_[i]))
            throw ConfigurationError("meas_noise_vars entries must be positive");
        if (!(distances_[i] > 0.0) || !std::isfinite(distances_[i]))
            throw ConfigurationError("distances entries must be positive");
    }
}

double NetworkParams::path_loss(int i) const
{
    return std::pow(distances_[i], 2.0 * path_loss_exp_);
}

NetworkParams NetworkParams::with_antennas(int n_antennas) const
{
    return NetworkParams(n_sensors_, n_antennas, signal_var_, fc_noise_var_, meas_noise_vars_,
                         distances_, path_loss_exp_);
}

Eigen::VectorXcd ChannelRealization::as_vector() const
{
    if (!is_single_antenna())
        throw ConfigurationError("channel vector form requires a single-antenna FC");
    return matrix.row(0).transpose();
}

void check_dimensions(const ChannelRealization& channel, const GainVector& gains,
                      const NetworkParams& params)
{
    if (channel.n_sensors() != params.n_sensors() || channel.n_antennas() != params.n_antennas() ||
        gains.size() != params.n_sensors())
    {
        std::ostringstream msg;
        msg << "dimension mismatch: channel " << channel.n_antennas() << "x" << channel.n_sensors()
            << ", gains " << gains.size() << ", params M=" << params.n_antennas()
            << " N=" << params.n_sensors();
        throw ConfigurationError(msg.str());
    }
}

ChannelRealization draw_channel(const NetworkParams& params, RandomStream& rng)
{
    const int m = params.n_antennas();
    const int n = params.n_sensors();
    ChannelRealization ch{Eigen::MatrixXcd(m, n)};
    for (int i = 0; i < n; ++i)
    {
        const double scale = std::pow(params.distances()[i], -params.path_loss_exp());
        for (int r = 0; r < m; ++r)
            ch.matrix(r, i) = scale * rng.complex_normal(1.0);
    }
    return ch;
}

Eigen::MatrixXcd noise_covariance(const ChannelRealization& channel, const GainVector& gains,
                                  const NetworkParams& params)
{
    check_dimensions(channel, gains, params);
    // H D V D^H H^H = sum_i |a_i|^2 sigma_{v,i}^2 h_i h_i^H
    const Eigen::VectorXd e = gains.squared_magnitudes().cwiseProduct(params.meas_noise_vars());
    const Eigen::MatrixXcd hs = channel.matrix * e.cwiseSqrt().asDiagonal();
    Eigen::MatrixXcd cw = Eigen::MatrixXcd::Identity(channel.n_antennas(), channel.n_antennas()) *
                          params.fc_noise_var();
    cw.selfadjointView<Eigen::Lower>().rankUpdate(hs);
    return cw.selfadjointView<Eigen::Lower>();
}

NoiseCovarianceFactor::NoiseCovarianceFactor(const ChannelRealization& channel,
                                             const GainVector& gains, const NetworkParams& params)
    : llt_(noise_covariance(channel, gains, params))
{
    if (llt_.info() != Eigen::Success)
        throw std::runtime_error("noise covariance is not positive definite");
}

double g_exact(const ChannelRealization& channel, const GainVector& gains, const NetworkParams& params)
{
    const NoiseCovarianceFactor factor(channel, gains, params);
    const Eigen::VectorXcd ha = channel.matrix * gains.gains;
    return std::max(0.0, ha.dot(factor.solve(ha)).real());
}

double g_via_lemma(const ChannelRealization& channel, const GainVector& gains, const NetworkParams& params)
{
    check_dimensions(channel, gains, params);
    const Eigen::VectorXd x = gains.squared_magnitudes();
    for (int i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0.0))
            throw std::invalid_argument("g_via_lemma requires every |a_i| > 0");
    }
    const double s2 = params.fc_noise_var();
    const Eigen::MatrixXcd hh = channel.matrix.adjoint() * channel.matrix;
    const Eigen::VectorXd e_inv = (x.cwiseProduct(params.meas_noise_vars())).cwiseInverse();

    Eigen::MatrixXcd inner = hh / s2;
    inner.diagonal() += e_inv.cast<cdouble>();
    const Eigen::LLT<Eigen::MatrixXcd> llt(inner);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("lemma inner matrix is not positive definite");

    const Eigen::VectorXcd hha = hh * gains.gains;
    const double first = gains.gains.dot(hha).real() / s2;
    const double second = hha.dot(llt.solve(hha)).real() / (s2 * s2);
    return first - second;
}

double g_asymptotic(const Eigen::VectorXd& x, const NetworkParams& params)
{
    if (x.size() != params.n_sensors())
        throw ConfigurationError("x must have length n_sensors");
    const double m = params.n_antennas();
    double g = 0.0;
    for (int i = 0; i < x.size(); ++i)
    {
        if (!(x[i] >= 0.0))
            throw std::domain_error("g_asymptotic requires x_i >= 0");
        g += m * x[i] / (params.referred_noise(i) + m * x[i] * params.meas_noise_vars()[i]);
    }
    return g;
}

HypothesisSample draw_sample(Hypothesis hypothesis, const ChannelRealization& channel,
                             const GainVector& gains, const NetworkParams& params,
                             RandomStream& signal_rng, RandomStream& noise_rng)
{
    check_dimensions(channel, gains, params);
    const int n = params.n_sensors();
    const int m = params.n_antennas();

    HypothesisSample s;
    s.hypothesis = hypothesis;
    if (hypothesis == Hypothesis::H1)
        s.theta = signal_rng.complex_normal(params.signal_var());

    s.meas_noise.resize(n);
    for (int i = 0; i < n; ++i)
        s.meas_noise[i] = noise_rng.complex_normal(params.meas_noise_vars()[i]);
    s.fc_noise.resize(m);
    for (int r = 0; r < m; ++r)
        s.fc_noise[r] = noise_rng.complex_normal(params.fc_noise_var());

    // H (a theta + D v) + n
    const Eigen::VectorXcd forwarded = gains.gains.cwiseProduct(s.meas_noise) + gains.gains * s.theta;
    s.received = channel.matrix * forwarded + s.fc_noise;
    return s;
}

} // namespace fcd
