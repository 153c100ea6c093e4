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

#include "fcdetect/rng.hpp"

#include <cmath>

namespace fcd
{

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace
{
std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
} // namespace

RandomStream RandomStream::derive(std::uint64_t base_seed, std::string_view label,
                                  std::uint64_t i, std::uint64_t j, std::uint64_t k)
{
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ fnv1a(label));
    h = mix64(h ^ i);
    h = mix64(h ^ j);
    h = mix64(h ^ k);

    // Feed two words through seed_seq to decorrelate nearby mt19937_64 states.
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(mix64(h)), static_cast<std::uint32_t>(mix64(h) >> 32)};
    RandomStream s(0);
    s.engine_.seed(seq);
    return s;
}

double RandomStream::uniform(double lo, double hi)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
}

std::complex<double> RandomStream::complex_normal(double variance)
{
    const double sd = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {sd * re, sd * im};
}

} // namespace fcd
