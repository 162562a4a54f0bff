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
#include <queue>

#include "common.hpp"

namespace infogeo {

/// Integration range; either endpoint may be infinite. Infinite ranges are
/// folded onto a finite interval with x = tan(u), which also tames
/// heavy-tailed (Cauchy-like) integrands.
struct Interval {
    double lo;
    double hi;
    static Interval real_line() {
        double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }
};

namespace detail {

struct QNode {
    double a, b, value, error;
    bool operator<(const QNode& o) const { return error < o.error; }
};

// Embedded Gauss pair: 7- and 15-point Gauss-Legendre rules on a panel, the
// difference serving as the local error estimate.
inline const double kG7[7][2] = {
    {-9.49107912342758375e-01, 1.29484966168869925e-01},
    {-7.41531185599394460e-01, 2.79705391489276589e-01},
    {-4.05845151377397184e-01, 3.81830050505118757e-01},
    {0.00000000000000000e+00, 4.17959183673469126e-01},
    {4.05845151377397184e-01, 3.81830050505118757e-01},
    {7.41531185599394460e-01, 2.79705391489276589e-01},
    {9.49107912342758375e-01, 1.29484966168869925e-01},
};
inline const double kG15[15][2] = {
    {-9.87992518020485377e-01, 3.07532419961181538e-02},
    {-9.37273392400705951e-01, 7.03660474881071529e-02},
    {-8.48206583410427206e-01, 1.07159220467171759e-01},
    {-7.24417731360170070e-01, 1.39570677926154324e-01},
    {-5.70972172608538830e-01, 1.66269205816994114e-01},
    {-3.94151347077563385e-01, 1.86161000015562239e-01},
    {-2.01194093997434542e-01, 1.98431485327111634e-01},
    {0.00000000000000000e+00, 2.02578241925561370e-01},
    {2.01194093997434542e-01, 1.98431485327111634e-01},
    {3.94151347077563385e-01, 1.86161000015562239e-01},
    {5.70972172608538830e-01, 1.66269205816994114e-01},
    {7.24417731360170070e-01, 1.39570677926154324e-01},
    {8.48206583410427206e-01, 1.07159220467171759e-01},
    {9.37273392400705951e-01, 7.03660474881071529e-02},
    {9.87992518020485377e-01, 3.07532419961181538e-02},
};

inline QNode eval_panel(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double g7 = 0.0, g15 = 0.0;
    for (const auto& nw : kG7) g7 += nw[1] * f(c + h * nw[0]);
    for (const auto& nw : kG15) g15 += nw[1] * f(c + h * nw[0]);
    g7 *= h;
    g15 *= h;
    return {a, b, g15, std::abs(g15 - g7)};
}

}  // namespace detail

/// Adaptive bisection quadrature on a finite interval: the panel with the
/// largest error estimate is split until the absolute tolerance is met.
/// Throws QuadratureError when the panel budget runs out first.
inline double integrate_finite(const std::function<double(double)>& f, double a,
                               double b, double abs_tol = 1e-9,
                               int max_panels = 10000) {
    std::priority_queue<detail::QNode> heap;
    detail::QNode root = detail::eval_panel(f, a, b);
    double total = root.value, err = root.error;
    heap.push(root);
    int panels = 1;
    while (err > abs_tol) {
        if (panels >= max_panels)
            throw QuadratureError("quadrature budget exhausted: error " +
                                  std::to_string(err) + " > tol " +
                                  std::to_string(abs_tol));
        detail::QNode n = heap.top();
        heap.pop();
        double mid = 0.5 * (n.a + n.b);
        detail::QNode l = detail::eval_panel(f, n.a, mid);
        detail::QNode r = detail::eval_panel(f, mid, n.b);
        total += l.value + r.value - n.value;
        err += l.error + r.error - n.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    return total;
}

/// Quadrature over a possibly infinite range, folding infinite directions
/// with the tangent substitution x = tan(u) (du weight 1/cos^2 u).
inline double integrate(const std::function<double(double)>& f, Interval iv,
                        double abs_tol = 1e-9, int max_panels = 10000) {
    bool lo_inf = std::isinf(iv.lo), hi_inf = std::isinf(iv.hi);
    if (!lo_inf && !hi_inf) return integrate_finite(f, iv.lo, iv.hi, abs_tol, max_panels);

    double ua, ub;
    std::function<double(double)> g;
    if (lo_inf && hi_inf) {
        ua = -M_PI_2;
        ub = M_PI_2;
        g = [&f](double u) {
            double c = std::cos(u);
            return f(std::tan(u)) / (c * c);
        };
    } else if (hi_inf) {
        double a = iv.lo;
        ua = 0.0;
        ub = M_PI_2;
        g = [&f, a](double u) {
            double c = std::cos(u);
            return f(a + std::tan(u)) / (c * c);
        };
    } else {
        double b = iv.hi;
        ua = 0.0;
        ub = M_PI_2;
        g = [&f, b](double u) {
            double c = std::cos(u);
            return f(b - std::tan(u)) / (c * c);
        };
    }
    // Stay strictly inside to avoid evaluating tan at the poles.
    double edge = 1e-14;
    return integrate_finite(g, ua + edge, ub - edge, abs_tol, max_panels);
}

/// Adaptive sum of f(0) + f(1) + ... for series with vanishing tails
/// (Poisson-type expectations). Stops once `run` consecutive terms fall
/// below tol relative to the accumulated sum.
inline double sum_series(const std::function<double(long)>& f, double tol = 1e-14,
                         long max_terms = 1000000, int run = 8) {
    double total = 0.0;
    int small = 0;
    for (long x = 0; x < max_terms; ++x) {
        double t = f(x);
        total += t;
        if (std::abs(t) <= tol * (1.0 + std::abs(total))) {
            if (++small >= run) return total;
        } else {
            small = 0;
        }
    }
    throw QuadratureError("series did not converge within term budget");
}

}  // namespace infogeo
