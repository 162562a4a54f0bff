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
#include <string>
#include <vector>

#include "expfam.hpp"
#include "finitediff.hpp"
#include "rng.hpp"

namespace infogeo {

// Monte-Carlo estimators of the information metric, the skewness tensor and
// the expected alpha-connections. They are written against any model type
// exposing dim() / log_density(theta, x) / draw(theta, rng); analytic
// score(theta, x) and log_density_hessian(theta, x) members are picked up
// when present, with central finite differences in theta as the fallback.

template <class M>
concept StatModel = requires(const M& m, const Vec& th, double x, Rng& r) {
    { m.dim() } -> std::convertible_to<int>;
    { m.log_density(th, x) } -> std::convertible_to<double>;
    { m.draw(th, r) } -> std::convertible_to<double>;
};

namespace detail {

template <StatModel M>
Vec model_score(const M& m, const Vec& theta, double x) {
    if constexpr (requires { m.score(theta, x); }) {
        return m.score(theta, x);
    } else {
        auto l = [&](const Vec& t) { return m.log_density(t, x); };
        return fd::gradient(l, theta);
    }
}

template <StatModel M>
Mat model_loghess(const M& m, const Vec& theta, double x) {
    if constexpr (requires { m.log_density_hessian(theta, x); }) {
        return m.log_density_hessian(theta, x);
    } else {
        auto l = [&](const Vec& t) { return m.log_density(t, x); };
        return fd::hessian(l, theta);
    }
}

inline Mat stderr_from_moments(const Mat& mean, const Mat& sumsq, long n) {
    Mat var = (sumsq / double(n) - mean.cwiseProduct(mean)).cwiseMax(0.0);
    return (var / double(n)).cwiseSqrt();
}

}  // namespace detail

/// Matrix estimate with entrywise Monte-Carlo standard errors.
struct FIMEstimate {
    Mat matrix;
    Mat stderr_;
    long n = 0;
    std::string method;
};

/// Mean of score outer products E[s s^T].
template <StatModel M>
FIMEstimate fim_score_outer(const M& m, const Vec& theta, long n, std::uint64_t seed) {
    if (n < 100) throw RangeError("fim_score_outer: need n >= 100");
    int d = m.dim();
    Rng rng(seed);
    Mat sum = Mat::Zero(d, d), sumsq = Mat::Zero(d, d);
    for (long i = 0; i < n; ++i) {
        double x = m.draw(theta, rng);
        Vec s = detail::model_score(m, theta, x);
        Mat o = s * s.transpose();
        sum += o;
        sumsq += o.cwiseProduct(o);
    }
    Mat mean = sum / double(n);
    return {mean, detail::stderr_from_moments(mean, sumsq, n), n, "score_outer"};
}

/// Mean of minus the log-density Hessian; for canonical exponential families
/// the integrand is deterministic, so the standard error collapses.
template <StatModel M>
FIMEstimate fim_neg_hessian(const M& m, const Vec& theta, long n, std::uint64_t seed) {
    if (n < 100) throw RangeError("fim_neg_hessian: need n >= 100");
    int d = m.dim();
    Rng rng(seed);
    Mat sum = Mat::Zero(d, d), sumsq = Mat::Zero(d, d);
    for (long i = 0; i < n; ++i) {
        double x = m.draw(theta, rng);
        Mat o = -detail::model_loghess(m, theta, x);
        sum += o;
        sumsq += o.cwiseProduct(o);
    }
    Mat mean = sum / double(n);
    return {mean, detail::stderr_from_moments(mean, sumsq, n), n, "neg_hessian"};
}

/// Monotone density embedding u -> k_alpha(u): log at alpha = 1, otherwise
/// the power map (2/(1-alpha)) u^{(1-alpha)/2}.
struct AlphaRepresentation {
    double alpha;

    double k(double u) const {
        if (alpha == 1.0) return std::log(u);
        double e = 0.5 * (1.0 - alpha);
        return std::pow(u, e) / e;
    }
};

/// FIM in the alpha-representation: E over x ~ p of
/// (d_i k_a(p))(d_j k_{-a}(p)) / p, the embedded derivatives taken by central
/// differences in theta. The expectation is alpha-independent; the per-sample
/// values are not, which makes agreement across alpha a genuine check.
template <StatModel M>
FIMEstimate fim_alpha(const M& m, const Vec& theta, double alpha, long n,
                      std::uint64_t seed) {
    if (n < 100) throw RangeError("fim_alpha: need n >= 100");
    int d = m.dim();
    AlphaRepresentation ka{alpha}, kma{-alpha};
    Rng rng(seed);
    Mat sum = Mat::Zero(d, d), sumsq = Mat::Zero(d, d);
    Vec tp = theta;
    for (long i = 0; i < n; ++i) {
        double x = m.draw(theta, rng);
        double px = std::exp(m.log_density(theta, x));
        Vec u(d), v(d);
        for (int j = 0; j < d; ++j) {
            double h = fd::grad_step(theta[j]);
            tp[j] = theta[j] + h;
            double pp = std::exp(m.log_density(tp, x));
            tp[j] = theta[j] - h;
            double pm = std::exp(m.log_density(tp, x));
            tp[j] = theta[j];
            u[j] = (ka.k(pp) - ka.k(pm)) / (2.0 * h);
            v[j] = (kma.k(pp) - kma.k(pm)) / (2.0 * h);
        }
        Mat o = (u * v.transpose()) / px;
        o = 0.5 * (o + o.transpose());
        sum += o;
        sumsq += o.cwiseProduct(o);
    }
    Mat mean = sum / double(n);
    std::string method = (alpha == 0.0) ? "sqrt_rep" : ("alpha_rep(" + std::to_string(alpha) + ")");
    return {mean, detail::stderr_from_moments(mean, sumsq, n), n, method};
}

/// Exact route: integral of p s s^T over the sample space.
inline FIMEstimate fim_quadrature(const ExponentialFamily& fam, const Vec& theta,
                                  double abs_tol = 1e-10) {
    int d = fam.dim();
    Mat G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            auto h = [&](double x) {
                Vec s = fam.score(theta, x);
                return std::exp(fam.log_density(theta, x)) * s[i] * s[j];
            };
            G(i, j) = G(j, i) = integrate_over_sample_space(fam, h, abs_tol);
        }
    return {G, Mat::Zero(d, d), 0, "quadrature"};
}

struct SkewnessEstimate {
    Tensor3 tensor;
    Tensor3 stderr_;
    long n = 0;
};

/// Totally symmetric cubic estimate E[s_i s_j s_k].
template <StatModel M>
SkewnessEstimate skewness_tensor(const M& m, const Vec& theta, long n,
                                 std::uint64_t seed) {
    if (n < 1000) throw RangeError("skewness_tensor: need n >= 1000");
    int d = m.dim();
    Rng rng(seed);
    Tensor3 sum(d), sumsq(d);
    for (long t = 0; t < n; ++t) {
        double x = m.draw(theta, rng);
        Vec s = detail::model_score(m, theta, x);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double v = s[i] * s[j] * s[k];
                    sum(i, j, k) += v;
                    sumsq(i, j, k) += v * v;
                }
    }
    Tensor3 mean = (1.0 / double(n)) * sum;
    Tensor3 se(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double var = sumsq(i, j, k) / double(n) - mean(i, j, k) * mean(i, j, k);
                se(i, j, k) = std::sqrt(std::max(0.0, var) / double(n));
            }
    return {mean, se, n};
}

/// Expected alpha-connection estimate, symmetric in (i, j).
struct ConnectionEstimate {
    Tensor3 gamma;
    Tensor3 stderr_;
    double alpha = 0.0;
    long n = 0;
};

/// Estimates E[(d_i d_j l + (1-alpha)/2 d_i l d_j l) d_k l] for every
/// requested alpha from ONE sample set: the two moment tensors
/// M1 = E[(d_i d_j l)(d_k l)] and M2 = E[d_i l d_j l d_k l] are accumulated
/// once and each estimate assembled as M1 + ((1-alpha)/2) M2. Linear
/// identities across alpha (interpolation, conjugate-pair averaging) then
/// hold up to a final rounding rather than up to Monte-Carlo noise.
template <StatModel M>
std::vector<ConnectionEstimate> alpha_christoffels_shared(const M& m, const Vec& theta,
                                                          const std::vector<double>& alphas,
                                                          long n, std::uint64_t seed) {
    if (n < 1000) throw RangeError("alpha_christoffels_shared: need n >= 1000");
    int d = m.dim();
    Rng rng(seed);
    Tensor3 sa(d), sb(d), saa(d), sbb(d), sab(d);
    for (long t = 0; t < n; ++t) {
        double x = m.draw(theta, rng);
        Vec s = detail::model_score(m, theta, x);
        Mat H = detail::model_loghess(m, theta, x);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double a = H(i, j) * s[k];
                    double b = s[i] * s[j] * s[k];
                    sa(i, j, k) += a;
                    sb(i, j, k) += b;
                    saa(i, j, k) += a * a;
                    sbb(i, j, k) += b * b;
                    sab(i, j, k) += a * b;
                }
    }
    Tensor3 m1 = (1.0 / double(n)) * sa;
    Tensor3 m2 = (1.0 / double(n)) * sb;

    std::vector<ConnectionEstimate> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        double c = 0.5 * (1.0 - alpha);
        ConnectionEstimate e;
        e.alpha = alpha;
        e.n = n;
        e.gamma = m1 + c * m2;
        e.stderr_ = Tensor3(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double va = saa(i, j, k) / double(n) - m1(i, j, k) * m1(i, j, k);
                    double vb = sbb(i, j, k) / double(n) - m2(i, j, k) * m2(i, j, k);
                    double cab = sab(i, j, k) / double(n) - m1(i, j, k) * m2(i, j, k);
                    double var = va + c * c * vb + 2.0 * c * cab;
                    e.stderr_(i, j, k) = std::sqrt(std::max(0.0, var) / double(n));
                }
        out.push_back(std::move(e));
    }
    return out;
}

template <StatModel M>
ConnectionEstimate expected_alpha_christoffels(const M& m, const Vec& theta, double alpha,
                                               long n, std::uint64_t seed) {
    return alpha_christoffels_shared(m, theta, {alpha}, n, seed)[0];
}

struct LeviCivitaSymbols {
    Tensor3 lowered;  // Gamma_{ij,k}
    Tensor3 upper;    // Gamma^k_{ij}
};

/// Christoffel symbols of the metric connection from a metric tensor field,
/// the metric derivatives taken by central differences:
///   Gamma_{ij,k} = (d_i g_jk + d_j g_ik - d_k g_ij) / 2,
///   Gamma^k_ij = g^{kl} Gamma_{ij,l}.
inline LeviCivitaSymbols levi_civita_symbols(
    const std::function<Mat(const Vec&)>& metric_field, const Vec& theta) {
    int d = static_cast<int>(theta.size());
    Mat g = metric_field(theta);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
        throw SingularMetricError("levi_civita_symbols: metric not positive-definite");

    std::vector<Mat> dg(d);
    Vec tp = theta;
    for (int k = 0; k < d; ++k) {
        double h = fd::grad_step(theta[k]);
        tp[k] = theta[k] + h;
        Mat gp = metric_field(tp);
        tp[k] = theta[k] - h;
        Mat gm = metric_field(tp);
        tp[k] = theta[k];
        dg[k] = (gp - gm) / (2.0 * h);
    }

    LeviCivitaSymbols out{Tensor3(d), Tensor3(d)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out.lowered(i, j, k) = 0.5 * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec low(d);
            for (int k = 0; k < d; ++k) low[k] = out.lowered(i, j, k);
            Vec up = llt.solve(low);
            for (int k = 0; k < d; ++k) out.upper(i, j, k) = up[k];
        }
    return out;
}

// Structure induced by a two-point parameter divergence at its diagonal
// (metric and the two conjugate Christoffel arrays). Derivative stencils use
// wider steps than the generic helpers; three nested differences would
// otherwise drown in round-off.

using ParamDivergence = std::function<double(const Vec&, const Vec&)>;

/// g_ij = -d/d theta_i d/d theta'_j D(theta : theta') at theta' = theta.
inline Mat eguchi_metric(const ParamDivergence& D, const Vec& theta) {
    int d = static_cast<int>(theta.size());
    Mat g(d, d);
    Vec u = theta, v = theta;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double hi = fd::hess_step(theta[i]);
            double hj = fd::hess_step(theta[j]);
            u[i] = theta[i] + hi; v[j] = theta[j] + hj;
            double dpp = D(u, v);
            v[j] = theta[j] - hj;
            double dpm = D(u, v);
            u[i] = theta[i] - hi; v[j] = theta[j] + hj;
            double dmp = D(u, v);
            v[j] = theta[j] - hj;
            double dmm = D(u, v);
            u[i] = theta[i]; v[j] = theta[j];
            g(i, j) = -(dpp - dpm - dmp + dmm) / (4.0 * hi * hj);
        }
    return 0.5 * (g + g.transpose());
}

namespace detail {

/// Hessian in the first argument at fixed second argument, wide steps.
inline Mat first_arg_hessian(const ParamDivergence& D, const Vec& u0, const Vec& v) {
    auto f = [&](const Vec& u) { return D(u, v); };
    int d = static_cast<int>(u0.size());
    Mat H(d, d);
    double f0 = f(u0);
    Vec up = u0;
    for (int i = 0; i < d; ++i) {
        double hi = fd::third_step(u0[i]);
        up[i] = u0[i] + hi;
        double fp = f(up);
        up[i] = u0[i] - hi;
        double fm = f(up);
        up[i] = u0[i];
        H(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
        for (int j = i + 1; j < d; ++j) {
            double hj = fd::third_step(u0[j]);
            up[i] = u0[i] + hi; up[j] = u0[j] + hj;
            double fpp = f(up);
            up[j] = u0[j] - hj;
            double fpm = f(up);
            up[i] = u0[i] - hi; up[j] = u0[j] + hj;
            double fmp = f(up);
            up[j] = u0[j] - hj;
            double fmm = f(up);
            up[i] = u0[i]; up[j] = u0[j];
            H(i, j) = H(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
        }
    }
    return H;
}

}  // namespace detail

/// Gamma_{ij,k} = -d_i d_j (first argument) d_k (second argument) D at the
/// diagonal: the primal connection the divergence induces.
inline Tensor3 eguchi_primal_christoffels(const ParamDivergence& D, const Vec& theta) {
    int d = static_cast<int>(theta.size());
    Tensor3 G(d);
    Vec v = theta;
    for (int k = 0; k < d; ++k) {
        double h = fd::third_step(theta[k]);
        v[k] = theta[k] + h;
        Mat Hp = detail::first_arg_hessian(D, theta, v);
        v[k] = theta[k] - h;
        Mat Hm = detail::first_arg_hessian(D, theta, v);
        v[k] = theta[k];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                G(i, j, k) = -(Hp(i, j) - Hm(i, j)) / (2.0 * h);
    }
    return G;
}

/// The conjugate array: swap the roles of the two arguments.
inline Tensor3 eguchi_dual_christoffels(const ParamDivergence& D, const Vec& theta) {
    ParamDivergence swapped = [&D](const Vec& a, const Vec& b) { return D(b, a); };
    return eguchi_primal_christoffels(swapped, theta);
}

}  // namespace infogeo
