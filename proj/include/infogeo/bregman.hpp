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

#include "legendre.hpp"
#include "potential.hpp"

namespace infogeo {

/// B_F(theta1 : theta2) = F(theta1) - F(theta2) - (theta1-theta2).grad F(theta2).
/// Nonnegative, zero iff the points coincide (strict convexity).
inline double bregman(const PotentialFunction& F, const Vec& theta1, const Vec& theta2) {
    double f1 = F.value(theta1);
    double f2 = F.value(theta2);
    Vec g2 = F.gradient(theta2);
    return f1 - f2 - (theta1 - theta2).dot(g2);
}

/// Canonical (Young-Fenchel) form F(theta) + F*(eta') - theta.eta'. Equals
/// bregman(F, theta, theta(eta')); nonnegative with equality iff
/// eta' = grad F(theta).
inline double canonical(const PotentialFunction& F, const Vec& theta, const Vec& eta_prime) {
    double f = F.value(theta);
    ConjugateResult c = legendre_conjugate(F, eta_prime);
    return f + c.value - theta.dot(eta_prime);
}

/// Jensen gap alpha F(theta1) + (1-alpha) F(theta2) - F(alpha theta1 + (1-alpha) theta2)
/// for alpha in (0,1). Divided by alpha it tends to bregman(F, theta2, theta1)
/// as alpha -> 0+.
inline double skew_jensen(const PotentialFunction& F, double alpha, const Vec& theta1,
                          const Vec& theta2) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw RangeError("skew_jensen: alpha must lie in (0,1)");
    double f1 = F.value(theta1);
    double f2 = F.value(theta2);
    Vec mix = alpha * theta1 + (1.0 - alpha) * theta2;
    return alpha * f1 + (1.0 - alpha) * f2 - F.value(mix);
}

}  // namespace infogeo
