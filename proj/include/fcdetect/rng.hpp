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

#ifndef FCDETECT_RNG_HPP
#define FCDETECT_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace fcd
{

// Seeded random stream. Streams are derived from a base seed plus a label and
// up to three indices, so every (label, indices) pair yields an independent,
// reproducible sequence regardless of the order in which streams are created.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream derive(std::uint64_t base_seed, std::string_view label,
                               std::uint64_t i = 0, std::uint64_t j = 0, std::uint64_t k = 0);

    double uniform(double lo, double hi);

    // Circularly symmetric complex Gaussian CN(0, variance): real and imaginary
    // parts are independent with variance/2 each.
    std::complex<double> complex_normal(double variance = 1.0);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// SplitMix64 finalizer, exposed for tests.
std::uint64_t mix64(std::uint64_t x);

} // namespace fcd

#endif
