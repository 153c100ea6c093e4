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

#ifndef FCDETECT_MODEL_HPP
#define FCDETECT_MODEL_HPP

#include "fcdetect/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace fcd
{

using cdouble = std::complex<double>;

// Inconsistent dimensions or invalid model parameters.
class ConfigurationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Fixed scalars and per-sensor vectors of the sensing/transmission model.
// Validated on construction; immutable afterwards.
class NetworkParams
{
public:
    NetworkParams(int n_sensors, int n_antennas, double signal_var, double fc_noise_var,
                  Eigen::VectorXd meas_noise_vars, Eigen::VectorXd distances, double path_loss_exp);

    int n_sensors() const { return n_sensors_; }
    int n_antennas() const { return n_antennas_; }
    double signal_var() const { return signal_var_; }
    double fc_noise_var() const { return fc_noise_var_; }
    const Eigen::VectorXd& meas_noise_vars() const { return meas_noise_vars_; }
    const Eigen::VectorXd& distances() const { return distances_; }
    double path_loss_exp() const { return path_loss_exp_; }

    // d_i^{2 alpha}: inverse of the large-scale channel power of sensor i.
    double path_loss(int i) const;

    // sigma_n^2 d_i^{2 alpha}, the FC noise referred back to sensor i.
    double referred_noise(int i) const { return fc_noise_var_ * path_loss(i); }

    // Same network observed by an FC with a different antenna count.
    NetworkParams with_antennas(int n_antennas) const;

private:
    int n_sensors_;
    int n_antennas_;
    double signal_var_;
    double fc_noise_var_;
    Eigen::VectorXd meas_noise_vars_;
    Eigen::VectorXd distances_;
    double path_loss_exp_;
};

// One draw of the M x N channel matrix; column i is the channel of sensor i.
struct ChannelRealization
{
    Eigen::MatrixXcd matrix;

    int n_antennas() const { return static_cast<int>(matrix.rows()); }
    int n_sensors() const { return static_cast<int>(matrix.cols()); }
    bool is_single_antenna() const { return matrix.rows() == 1; }

    // M = 1 only: the channel vector h (h_i = H(0, i)).
    Eigen::VectorXcd as_vector() const;
};

struct GainVector
{
    Eigen::VectorXcd gains;

    GainVector() = default;
    explicit GainVector(Eigen::VectorXcd g) : gains(std::move(g)) {}
    static GainVector from_real(const Eigen::VectorXd& g) { return GainVector(g.cast<cdouble>()); }
    static GainVector zeros(int n) { return GainVector(Eigen::VectorXcd::Zero(n)); }

    int size() const { return static_cast<int>(gains.size()); }

    // x_i = |a_i|^2
    Eigen::VectorXd squared_magnitudes() const { return gains.cwiseAbs2(); }
    double power() const { return gains.squaredNorm(); }
};

enum class Hypothesis
{
    H0,
    H1
};

struct HypothesisSample
{
    Hypothesis hypothesis = Hypothesis::H0;
    cdouble theta{0.0, 0.0};
    Eigen::VectorXcd meas_noise;
    Eigen::VectorXcd fc_noise;
    Eigen::VectorXcd received;
};

// Cholesky factor of C_w = H D V D^H H^H + sigma_n^2 I for one (channel, gains)
// pair. C_w is never inverted explicitly.
class NoiseCovarianceFactor
{
public:
    NoiseCovarianceFactor(const ChannelRealization& channel, const GainVector& gains,
                          const NetworkParams& params);

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const { return llt_.solve(rhs); }

private:
    Eigen::LLT<Eigen::MatrixXcd> llt_;
};

ChannelRealization draw_channel(const NetworkParams& params, RandomStream& rng);

Eigen::MatrixXcd noise_covariance(const ChannelRealization& channel, const GainVector& gains,
                                  const NetworkParams& params);

// g(a) = a^H H^H C_w^{-1} H a, evaluated directly. Zero gains are allowed.
double g_exact(const ChannelRealization& channel, const GainVector& gains, const NetworkParams& params);

// g(a) through the matrix inversion lemma on E = D V D^H. Requires |a_i| > 0
// for every sensor; drop non-transmitting sensors before calling.
double g_via_lemma(const ChannelRealization& channel, const GainVector& gains, const NetworkParams& params);

// Large-M limit of g as a function of x_i = |a_i|^2:
//   sum_i M x_i / (sigma_n^2 d_i^{2 alpha} + M x_i sigma_{v,i}^2)
double g_asymptotic(const Eigen::VectorXd& x, const NetworkParams& params);

// Draws theta (H1 only), v and n and forms y = H a theta + H D v + n.
HypothesisSample draw_sample(Hypothesis hypothesis, const ChannelRealization& channel,
                             const GainVector& gains, const NetworkParams& params,
                             RandomStream& signal_rng, RandomStream& noise_rng);

void check_dimensions(const ChannelRealization& channel, const GainVector& gains,
                      const NetworkParams& params);

} // namespace fcd

#endif
