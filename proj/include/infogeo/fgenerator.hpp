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
#include <functional>
#include <limits>
#include <string>

#include "common.hpp"
#include "finitediff.hpp"

namespace infogeo {

// Convex generator f on (0, inf) with f(1) = 0, together with the data the
// statistical-divergence machinery needs: derivatives at u = 1 and the two
// boundary conventions (value limit at 0+ and asymptotic slope at infinity)
// that decide how zero-probability bins contribute.
struct FGenerator {
    std::function<double(double)> f;
    double fprime1 = 0.0;   // f'(1)
    double fsecond1 = 0.0;  // f''(1)
    double fthird1 = 0.0;   // f'''(1)
    double limit_zero = 0.0;  // lim_{u->0+} f(u), may be +inf
    double slope_inf = 0.0;   // lim_{u->inf} f(u)/u, may be +inf
    std::string name;

    bool is_standard(double tol = 1e-8) const {
        return std::abs(fprime1) <= tol && std::abs(fsecond1 - 1.0) <= tol;
    }
};

/// Wrap a raw convex f; derivatives at 1 are filled in by central finite
/// differences and the boundary limits probed numerically. Built-in
/// generators below carry these analytically instead.
inline FGenerator make_generator(std::function<double(double)> f, std::string name) {
    FGenerator g;
    g.f = std::move(f);
    g.name = std::move(name);
    if (std::abs(g.f(1.0)) > 1e-12)
        throw DegenerateGeneratorError(g.name + ": generator must satisfy f(1) = 0");
    g.fprime1 = fd::deriv1(g.f, 1.0);
    g.fsecond1 = fd::deriv2(g.f, 1.0);
    g.fthird1 = fd::deriv3(g.f, 1.0);
    // Probe the boundary behavior at two scales; a value still drifting
    // between probes is classified as divergent.
    auto settle = [](double near, double far) {
        if (!std::isfinite(far) || std::abs(far) > 1e8 ||
            std::abs(far - near) > 1e-2 * (1.0 + std::abs(far)))
            return std::numeric_limits<double>::infinity() * (far > 0 ? 1.0 : -1.0);
        return far;
    };
    g.limit_zero = settle(g.f(1e-6), g.f(1e-12));
    g.slope_inf = settle(g.f(1e6) / 1e6, g.f(1e12) / 1e12);
    return g;
}

namespace generators {

inline FGenerator kl() {
    FGenerator g;
    g.f = [](double u) { return -std::log(u); };
    g.fprime1 = -1.0;
    g.fsecond1 = 1.0;
    g.fthird1 = -2.0;
    g.limit_zero = std::numeric_limits<double>::infinity();
    g.slope_inf = 0.0;
    g.name = "kl";
    return g;
}

inline FGenerator reverse_kl() {
    FGenerator g;
    g.f = [](double u) { return u * std::log(u); };
    g.fprime1 = 1.0;
    g.fsecond1 = 1.0;
    g.fthird1 = -1.0;
    g.limit_zero = 0.0;
    g.slope_inf = std::numeric_limits<double>::infinity();
    g.name = "reverse_kl";
    return g;
}

inline FGenerator hellinger() {
    FGenerator g;
    g.f = [](double u) { double s = std::sqrt(u) - 1.0; return s * s; };
    g.fprime1 = 0.0;
    g.fsecond1 = 0.5;
    g.fthird1 = -0.75;
    g.limit_zero = 1.0;
    g.slope_inf = 1.0;
    g.name = "hellinger";
    return g;
}

inline FGenerator total_variation() {
    FGenerator g;
    g.f = [](double u) { return 0.5 * std::abs(u - 1.0); };
    g.fprime1 = 0.0;  // symmetric subgradient
    g.fsecond1 = std::numeric_limits<double>::infinity();  // point mass at 1
    g.fthird1 = 0.0;
    g.limit_zero = 0.5;
    g.slope_inf = 0.5;
    g.name = "total_variation";
    return g;
}

/// f(u) = u log u - (u+1) log((1+u)/2). Yields twice the Jensen-Shannon
/// integral; bounded, so zero bins on either side stay finite.
inline FGenerator jensen_shannon() {
    FGenerator g;
    g.f = [](double u) {
        return u * std::log(u) - (u + 1.0) * std::log(0.5 * (1.0 + u));
    };
    g.fprime1 = 0.0;
    g.fsecond1 = 0.5;
    g.fthird1 = -0.75;
    g.limit_zero = std::log(2.0);
    g.slope_inf = std::log(2.0);
    g.name = "jensen_shannon";
    return g;
}

/// One-parameter family f(u) = 4/(1-a^2) (1 - u^{(1+a)/2}); the endpoints
/// a = 1 and a = -1 dispatch to the kl / reverse_kl limits.
inline FGenerator alpha_divergence(double a) {
    if (a == 1.0) return kl();
    if (a == -1.0) return reverse_kl();
    FGenerator g;
    double c = 4.0 / (1.0 - a * a);
    double e = 0.5 * (1.0 + a);
    g.f = [c, e](double u) { return c * (1.0 - std::pow(u, e)); };
    g.fprime1 = -2.0 / (1.0 - a);
    g.fsecond1 = 1.0;
    g.fthird1 = 0.5 * (a - 3.0);
    g.limit_zero = (a > -1.0) ? c : std::numeric_limits<double>::infinity();
    g.slope_inf = (a < 1.0) ? 0.0 : std::numeric_limits<double>::infinity();
    g.name = "alpha(" + std::to_string(a) + ")";
    return g;
}

}  // namespace generators

/// Normalize to the standard scale: g(u) = (f(u) - f'(1)(u-1)) / f''(1), so
/// g(1) = g'(1) = 0 and g''(1) = 1. The linear shift leaves every divergence
/// value unchanged; the scale divides it by f''(1).
inline FGenerator standardize(const FGenerator& gen) {
    if (!(std::isfinite(gen.fsecond1)) || gen.fsecond1 <= 0.0)
        throw DegenerateGeneratorError(gen.name + ": f''(1) must be positive and finite");
    FGenerator g;
    auto f = gen.f;
    double a = gen.fprime1, s = gen.fsecond1;
    g.f = [f, a, s](double u) { return (f(u) - a * (u - 1.0)) / s; };
    g.fprime1 = 0.0;
    g.fsecond1 = 1.0;
    g.fthird1 = gen.fthird1 / s;
    g.limit_zero = (gen.limit_zero + a) / s;
    g.slope_inf = (gen.slope_inf - a) / s;
    g.name = "std:" + gen.name;
    return g;
}

/// Diamond conjugate f<>(u) = u f(1/u); swaps the divergence arguments
/// (reference duality) and preserves standardness.
inline FGenerator diamond(const FGenerator& gen) {
    FGenerator g;
    auto f = gen.f;
    g.f = [f](double u) { return u * f(1.0 / u); };
    g.fprime1 = -gen.fprime1;
    g.fsecond1 = gen.fsecond1;
    g.fthird1 = -gen.fthird1 - 3.0 * gen.fsecond1;
    g.limit_zero = gen.slope_inf;
    g.slope_inf = gen.limit_zero;
    g.name = gen.name + "<>";
    return g;
}

/// alpha = 2 f'''(1) + 3 identifies which member of the alpha family a
/// standard generator induces (-1 for standardized kl, +1 for reverse).
inline double alpha_of_generator(const FGenerator& gen) {
    return 2.0 * gen.fthird1 + 3.0;
}

}  // namespace infogeo
