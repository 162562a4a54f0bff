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

#include "common.hpp"

namespace infogeo {

// Central finite differences. Step sizes balance truncation against
// round-off: eps^(1/3) for first derivatives, eps^(1/4) for second,
// eps^(1/5) where a third derivative is formed directly.
namespace fd {

inline double eps() { return std::numeric_limits<double>::epsilon(); }

inline double grad_step(double x) {
    static const double h0 = std::cbrt(eps());
    return h0 * std::max(1.0, std::abs(x));
}

inline double hess_step(double x) {
    static const double h0 = std::pow(eps(), 0.25);
    return h0 * std::max(1.0, std::abs(x));
}

inline double third_step(double x) {
    static const double h0 = std::pow(eps(), 0.2);
    return h0 * std::max(1.0, std::abs(x));
}

using Fn = std::function<double(const Vec&)>;

inline Vec gradient(const Fn& f, const Vec& x) {
    Vec g(x.size());
    Vec xp = x;
    for (int i = 0; i < x.size(); ++i) {
        double h = grad_step(x[i]);
        xp[i] = x[i] + h;
        double fp = f(xp);
        xp[i] = x[i] - h;
        double fm = f(xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

inline Mat hessian(const Fn& f, const Vec& x) {
    int d = static_cast<int>(x.size());
    Mat H(d, d);
    double f0 = f(x);
    Vec xp = x;
    for (int i = 0; i < d; ++i) {
        double hi = hess_step(x[i]);
        xp[i] = x[i] + hi;
        double fp = f(xp);
        xp[i] = x[i] - hi;
        double fm = f(xp);
        xp[i] = x[i];
        H(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
        for (int j = i + 1; j < d; ++j) {
            double hj = hess_step(x[j]);
            xp[i] = x[i] + hi; xp[j] = x[j] + hj;
            double fpp = f(xp);
            xp[j] = x[j] - hj;
            double fpm = f(xp);
            xp[i] = x[i] - hi; xp[j] = x[j] + hj;
            double fmp = f(xp);
            xp[j] = x[j] - hj;
            double fmm = f(xp);
            xp[i] = x[i]; xp[j] = x[j];
            H(i, j) = H(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
        }
    }
    return H;
}

/// Scalar first derivative.
inline double deriv1(const std::function<double(double)>& f, double x) {
    double h = grad_step(x);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Scalar second derivative.
inline double deriv2(const std::function<double(double)>& f, double x) {
    double h = hess_step(x);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Scalar third derivative, direct five-point stencil.
inline double deriv3(const std::function<double(double)>& f, double x) {
    double h = third_step(x);
    return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) /
           (2.0 * h * h * h);
}

/// Third-derivative array of a scalar field, formed by differencing its
/// Hessian along each coordinate with the Hessian step, then symmetrized.
inline Tensor3 third_from_hessian(const std::function<Mat(const Vec&)>& hess,
                                  const Vec& x) {
    int d = static_cast<int>(x.size());
    Tensor3 t(d);
    Vec xp = x;
    for (int k = 0; k < d; ++k) {
        double h = hess_step(x[k]);
        xp[k] = x[k] + h;
        Mat Hp = hess(xp);
        xp[k] = x[k] - h;
        Mat Hm = hess(xp);
        xp[k] = x[k];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                t(i, j, k) = (Hp(i, j) - Hm(i, j)) / (2.0 * h);
    }
    return t.symmetrized();
}

}  // namespace fd
}  // namespace infogeo
