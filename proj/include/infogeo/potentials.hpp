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

#include "potential.hpp"

namespace infogeo {
namespace potentials {

inline double softplus(double x) {
    return std::log1p(std::exp(-std::abs(x))) + std::max(x, 0.0);
}

inline double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

/// F(theta) = |theta|^2 / 2, the self-dual quadratic (Euclidean geometry).
inline PotentialFunction quadratic(int dim) {
    PotentialFunction F("quadratic", Domain::unbounded(dim),
                        [](const Vec& t) { return 0.5 * t.squaredNorm(); });
    F.with_gradient([](const Vec& t) { return t; })
        .with_hessian([dim](const Vec&) { return Mat::Identity(dim, dim); })
        .with_third([dim](const Vec&) { return Tensor3(dim); })
        .with_grad_inverse([](const Vec& e) { return e; });
    return F;
}

/// Product of coin cumulants: F(theta) = sum_i log(1 + exp(theta_i)).
inline PotentialFunction bernoulli_product(int dim) {
    PotentialFunction F("bernoulli_product", Domain::unbounded(dim), [](const Vec& t) {
        double s = 0.0;
        for (int i = 0; i < t.size(); ++i) s += softplus(t[i]);
        return s;
    });
    F.with_gradient([](const Vec& t) {
         Vec g(t.size());
         for (int i = 0; i < t.size(); ++i) g[i] = sigmoid(t[i]);
         return g;
     })
        .with_hessian([](const Vec& t) {
            Mat H = Mat::Zero(t.size(), t.size());
            for (int i = 0; i < t.size(); ++i) {
                double s = sigmoid(t[i]);
                H(i, i) = s * (1.0 - s);
            }
            return H;
        })
        .with_third([](const Vec& t) {
            Tensor3 T(static_cast<int>(t.size()));
            for (int i = 0; i < t.size(); ++i) {
                double s = sigmoid(t[i]);
                T(i, i, i) = s * (1.0 - s) * (1.0 - 2.0 * s);
            }
            return T;
        })
        .with_grad_inverse([](const Vec& e) {
            Vec t(e.size());
            for (int i = 0; i < e.size(); ++i) {
                if (!(e[i] > 0.0 && e[i] < 1.0))
                    throw DomainError("bernoulli_product: eta outside (0,1)");
                t[i] = std::log(e[i] / (1.0 - e[i]));
            }
            return t;
        });
    return F;
}

inline PotentialFunction bernoulli() {
    PotentialFunction F = bernoulli_product(1);
    return F;
}

/// F(theta) = exp(theta), the counting-process cumulant.
inline PotentialFunction poisson() {
    PotentialFunction F("poisson", Domain::unbounded(1),
                        [](const Vec& t) { return std::exp(t[0]); });
    F.with_gradient([](const Vec& t) { return Vec::Constant(1, std::exp(t[0])); })
        .with_hessian([](const Vec& t) { return Mat::Constant(1, 1, std::exp(t[0])); })
        .with_third([](const Vec& t) {
            Tensor3 T(1);
            T(0, 0, 0) = std::exp(t[0]);
            return T;
        })
        .with_grad_inverse([](const Vec& e) {
            if (!(e[0] > 0.0)) throw DomainError("poisson: eta must be positive");
            return Vec::Constant(1, std::log(e[0]));
        });
    return F;
}

/// Cumulant of the finite distribution on k outcomes: D = k-1 and
/// F(theta) = log(1 + sum_i exp(theta_i)), evaluated with a log-sum-exp
/// shift for overflow safety.
inline PotentialFunction categorical(int k) {
    int dim = k - 1;
    auto probs = [dim](const Vec& t) {
        double m = 0.0;
        for (int i = 0; i < dim; ++i) m = std::max(m, t[i]);
        double z = std::exp(-m);
        Vec e(dim);
        for (int i = 0; i < dim; ++i) {
            e[i] = std::exp(t[i] - m);
            z += e[i];
        }
        return Vec(e / z);
    };
    PotentialFunction F("categorical", Domain::unbounded(dim), [dim](const Vec& t) {
        double m = 0.0;
        for (int i = 0; i < dim; ++i) m = std::max(m, t[i]);
        double s = std::exp(-m);
        for (int i = 0; i < dim; ++i) s += std::exp(t[i] - m);
        return m + std::log(s);
    });
    F.with_gradient(probs)
        .with_hessian([probs](const Vec& t) {
            Vec p = probs(t);
            Mat H = -p * p.transpose();
            H.diagonal() += p;
            return H;
        })
        .with_third([probs, dim](const Vec& t) {
            Vec p = probs(t);
            Tensor3 T(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    for (int k2 = 0; k2 < dim; ++k2) {
                        double v = 2.0 * p[i] * p[j] * p[k2];
                        if (i == j) v -= p[i] * p[k2];
                        if (i == k2) v -= p[i] * p[j];
                        if (j == k2) v -= p[i] * p[j];
                        if (i == j && j == k2) v += p[i];
                        T(i, j, k2) = v;
                    }
            return T;
        })
        .with_grad_inverse([dim](const Vec& e) {
            double rest = 1.0 - e.sum();
            if (!(rest > 0.0)) throw DomainError("categorical: eta outside the simplex");
            Vec t(dim);
            for (int i = 0; i < dim; ++i) {
                if (!(e[i] > 0.0)) throw DomainError("categorical: eta outside the simplex");
                t[i] = std::log(e[i] / rest);
            }
            return t;
        });
    return F;
}

/// Location-family cumulant with fixed scale: F(theta) = theta^2/(2 sigma^2).
inline PotentialFunction gaussian_location(double sigma) {
    double s2 = sigma * sigma;
    PotentialFunction F("gaussian_location", Domain::unbounded(1),
                        [s2](const Vec& t) { return t[0] * t[0] / (2.0 * s2); });
    F.with_gradient([s2](const Vec& t) { return Vec::Constant(1, t[0] / s2); })
        .with_hessian([s2](const Vec&) { return Mat::Constant(1, 1, 1.0 / s2); })
        .with_third([](const Vec&) { return Tensor3(1); })
        .with_grad_inverse([s2](const Vec& e) { return Vec::Constant(1, s2 * e[0]); });
    return F;
}

/// Two-parameter normal cumulant in natural coordinates
/// theta = (mu/sigma^2, -1/(2 sigma^2)) on R x (-inf, 0):
/// F(theta) = -theta1^2/(4 theta2) - log(-2 theta2)/2.
inline PotentialFunction gaussian_meanvar() {
    Domain dom = Domain::box(Vec::Constant(2, -std::numeric_limits<double>::infinity()),
                             (Vec(2) << std::numeric_limits<double>::infinity(), 0.0).finished());
    PotentialFunction F("gaussian_meanvar", dom, [](const Vec& t) {
        return -t[0] * t[0] / (4.0 * t[1]) - 0.5 * std::log(-2.0 * t[1]);
    });
    F.with_gradient([](const Vec& t) {
         Vec g(2);
         g[0] = -t[0] / (2.0 * t[1]);
         g[1] = t[0] * t[0] / (4.0 * t[1] * t[1]) - 1.0 / (2.0 * t[1]);
         return g;
     })
        .with_hessian([](const Vec& t) {
            double a = t[0], b = t[1];
            Mat H(2, 2);
            H(0, 0) = -1.0 / (2.0 * b);
            H(0, 1) = H(1, 0) = a / (2.0 * b * b);
            H(1, 1) = -a * a / (2.0 * b * b * b) + 1.0 / (2.0 * b * b);
            return H;
        })
        .with_third([](const Vec& t) {
            double a = t[0], b = t[1];
            Tensor3 T(2);
            double f112 = 1.0 / (2.0 * b * b);
            double f122 = -a / (b * b * b);
            double f222 = 1.5 * a * a / (b * b * b * b) - 1.0 / (b * b * b);
            T(0, 0, 0) = 0.0;
            T(0, 0, 1) = T(0, 1, 0) = T(1, 0, 0) = f112;
            T(0, 1, 1) = T(1, 0, 1) = T(1, 1, 0) = f122;
            T(1, 1, 1) = f222;
            return T;
        })
        .with_grad_inverse([](const Vec& e) {
            double mu = e[0];
            double var = e[1] - e[0] * e[0];
            if (!(var > 0.0)) throw DomainError("gaussian_meanvar: eta2 <= eta1^2");
            Vec t(2);
            t[0] = mu / var;
            t[1] = -0.5 / var;
            return t;
        });
    return F;
}

/// Waiting-time cumulant F(theta) = -log(-theta) on (-inf, 0).
inline PotentialFunction exponential() {
    PotentialFunction F("exponential", Domain::negative(1),
                        [](const Vec& t) { return -std::log(-t[0]); });
    F.with_gradient([](const Vec& t) { return Vec::Constant(1, -1.0 / t[0]); })
        .with_hessian([](const Vec& t) { return Mat::Constant(1, 1, 1.0 / (t[0] * t[0])); })
        .with_third([](const Vec& t) {
            Tensor3 T(1);
            T(0, 0, 0) = -2.0 / (t[0] * t[0] * t[0]);
            return T;
        })
        .with_grad_inverse([](const Vec& e) {
            if (!(e[0] > 0.0)) throw DomainError("exponential: eta must be positive");
            return Vec::Constant(1, -1.0 / e[0]);
        });
    return F;
}

/// Separable negative entropy F(theta) = sum_i theta_i log theta_i on the
/// positive orthant. Its divergence is the extended Kullback-Leibler form.
inline PotentialFunction entropy_sum(int dim) {
    PotentialFunction F("entropy_sum", Domain::positive(dim), [](const Vec& t) {
        double s = 0.0;
        for (int i = 0; i < t.size(); ++i) s += t[i] * std::log(t[i]);
        return s;
    });
    F.with_gradient([](const Vec& t) {
         Vec g(t.size());
         for (int i = 0; i < t.size(); ++i) g[i] = 1.0 + std::log(t[i]);
         return g;
     })
        .with_hessian([](const Vec& t) {
            Mat H = Mat::Zero(t.size(), t.size());
            for (int i = 0; i < t.size(); ++i) H(i, i) = 1.0 / t[i];
            return H;
        })
        .with_third([](const Vec& t) {
            Tensor3 T(static_cast<int>(t.size()));
            for (int i = 0; i < t.size(); ++i) T(i, i, i) = -1.0 / (t[i] * t[i]);
            return T;
        })
        .with_grad_inverse([](const Vec& e) {
            Vec t(e.size());
            for (int i = 0; i < e.size(); ++i) t[i] = std::exp(e[i] - 1.0);
            return t;
        });
    return F;
}

}  // namespace potentials
}  // namespace infogeo
