/*
 * facedyn - 3D facial dynamics: morphable model fitting, sparse texture
 * mapping, and recurrent coefficient sequence prediction.
 *
 * File: include/facedyn/rng.hpp
 *
 * Copyright 2026 The facedyn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#ifndef FACEDYN_RNG_HPP
#define FACEDYN_RNG_HPP

#include <cstdint>
#include <random>

namespace facedyn {

/**
 * Seeded random source with a fixed mapping from generator bits to doubles,
 * so equal seeds give bit-identical streams on every platform (the std
 * distributions leave that mapping implementation-defined).
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /** Uniform double in [0, 1). */
    double uniform()
    {
        // 53 random bits scaled by 2^-53.
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /** Uniform double in [lo, hi). */
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /** Uniform integer in [0, n). Requires n >= 1. */
    std::uint64_t index(std::uint64_t n)
    {
        // Rejection sampling keeps the mapping exact for any n.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    /** Standard normal via Box-Muller on the fixed uniform mapping. */
    double normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /** Derives an independent stream for a subtask. */
    Rng fork() { return Rng(gen_()); }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace facedyn

#endif /* FACEDYN_RNG_HPP */
