// Copyright 2026 The qgpr developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace qgpr::rng {

// All randomness in the library flows through mt19937_64 engines created
// from explicitly derived seeds. Uniform and normal variates are produced
// by hand (not via std:: distributions) so that identical seeds give
// identical streams on every platform.

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derive a child seed from a master seed and a call context. Folding the
/// context words through splitmix64 keeps independently seeded streams
/// decorrelated, so Gram entries and parallel runs can each own a stream.
inline std::uint64_t mix(std::uint64_t seed, std::initializer_list<std::uint64_t> context) {
    std::uint64_t state = seed;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t word : context) {
        state ^= word + 0x9e3779b97f4a7c15ull + (out << 6) + (out >> 2);
        out = splitmix64(state);
    }
    return out;
}

inline Engine engine(std::uint64_t seed) { return Engine{seed}; }

inline Engine engine(std::uint64_t seed, std::initializer_list<std::uint64_t> context) {
    return Engine{mix(seed, context)};
}

/// Uniform draw in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

/// Standard normal via Box-Muller (cosine branch only).
inline double normal01(Engine& eng) {
    const double u1 = 1.0 - uniform01(eng);  // (0, 1], keeps the log finite
    const double u2 = uniform01(eng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace qgpr::rng
