// Copyright 2026 The InfoGeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "common.hpp"

namespace infogeo {

// Deterministic random source. mt19937_64 is fully specified by the
// standard; all distribution transforms are written out here instead of
// using std::*_distribution (whose algorithms vary across standard
// libraries), so a seed pins the exact stream on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller (two uniforms per draw).
    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    /// Inverse-CDF exponential with rate lambda.
    double exponential(double lambda) {
        return -std::log(uniform_pos()) / lambda;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Inverse-CDF draw from a finite distribution given by probabilities.
    int categorical(const Vec& probs) {
        double u = uniform();
        double acc = 0.0;
        for (int i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        return static_cast<int>(probs.size()) - 1;
    }

    /// Poisson draw by Knuth's product-of-uniforms method. Cost grows with
    /// the rate; intended for moderate rates.
    long poisson(double rate) {
        double limit = std::exp(-rate);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_pos();
        } while (p > limit);
        return k - 1;
    }

    double laplace(double mu, double b) {
        double u = uniform() - 0.5;
        return mu - b * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
    }

    double cauchy(double x0, double gamma) {
        return x0 + gamma * std::tan(M_PI * (uniform() - 0.5));
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

/// Stable per-task seed derivation (e.g. one stream per simulation trial).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return master + index;
}

}  // namespace infogeo
