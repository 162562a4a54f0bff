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

#include <utility>

#include "manifold.hpp"

namespace infogeo {

namespace detail {

// Equality-constrained Newton minimization of a smooth convex objective.
// Feasibility (A x = b) is established once and preserved by null-space
// steps from the KKT system; steps are halved until the objective decreases
// and the iterate stays valid. Convergence is declared when the gradient
// projected onto the constraint tangent space is below tol.
struct ConstrainedObjective {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    std::function<Mat(const Vec&)> hess;
    std::function<bool(const Vec&)> valid;  // domain membership
};

inline Vec constrained_newton(const ConstrainedObjective& obj,
                              const AffineSubmanifold& S, Vec x, double tol = 1e-9,
                              int max_iter = 200) {
    const Mat& A = S.A();
    Mat P = S.tangent_projector();
    int d = static_cast<int>(A.cols());
    int c = static_cast<int>(A.rows());

    // Residual-driven polish for when value differences hit the FP floor.
    auto polish = [&](Vec y) {
        for (int p = 0; p < 8; ++p) {
            Vec g = obj.grad(y);
            double res = (P * g).lpNorm<Eigen::Infinity>();
            Mat H = obj.hess(y);
            Mat K = Mat::Zero(d + c, d + c);
            K.topLeftCorner(d, d) = H;
            K.topRightCorner(d, c) = A.transpose();
            K.bottomLeftCorner(c, d) = A;
            Vec rhs = Vec::Zero(d + c);
            rhs.head(d) = -g;
            Vec step = K.ldlt().solve(rhs).head(d);
            if (!step.allFinite()) return y;
            Vec cand = y + step;
            if (!obj.valid(cand)) return y;
            Vec gc = obj.grad(cand);
            if ((P * gc).lpNorm<Eigen::Infinity>() >= res) return y;
            y = cand;
        }
        return y;
    };

    double fx = obj.value(x);
    for (int it = 0; it < max_iter; ++it) {
        Vec g = obj.grad(x);
        if ((P * g).lpNorm<Eigen::Infinity>() <= tol) return polish(x);

        Mat H = obj.hess(x);
        Mat K = Mat::Zero(d + c, d + c);
        K.topLeftCorner(d, d) = H;
        K.topRightCorner(d, c) = A.transpose();
        K.bottomLeftCorner(c, d) = A;
        Vec rhs = Vec::Zero(d + c);
        rhs.head(d) = -g;
        Vec sol = K.ldlt().solve(rhs);
        Vec step = sol.head(d);
        if (!step.allFinite()) step = -(P * g);  // singular KKT; fall back

        double t = 1.0;
        bool accepted = false;
        while (t >= 1e-14) {
            Vec cand = x + t * step;
            if (obj.valid(cand)) {
                double fc;
                bool ok = true;
                try {
                    fc = obj.value(cand);
                } catch (const Error&) {
                    ok = false;
                    fc = 0.0;
                }
                if (ok && fc < fx) {
                    x = cand;
                    fx = fc;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!accepted) {
            // Objective differences fell below floating-point resolution;
            // polish the residual directly and accept if negligible.
            x = polish(x);
            double res = (P * obj.grad(x)).lpNorm<Eigen::Infinity>();
            if (res <= 1e-6) return x;
            throw ConvergenceError("constrained Newton: line search stalled at residual " +
                                   std::to_string(res));
        }
    }
    throw ConvergenceError("constrained Newton: iteration budget exhausted");
}

/// Feasible interior starting point for A x = b: the least-squares particular
/// solution, the constraint-respecting pull toward the domain reference, then
/// pulls toward a deterministic spread of interior anchors.
inline Vec feasible_start(const AffineSubmanifold& S, const Domain& dom) {
    Mat AAt = S.A() * S.A().transpose();
    Vec x = S.A().transpose() * AAt.ldlt().solve(S.b());
    if (dom.contains(x, 1e-9)) return x;
    Vec anchored = S.closest_point(dom.reference());
    if (dom.contains(anchored, 1e-9)) return anchored;
    for (double t = 0.05; t <= 1.0; t += 0.05) {
        Vec cand = (1.0 - t) * anchored + t * x;
        if (dom.contains(cand, 1e-9)) return cand;
    }
    Rng probe(0x5eed);
    for (int k = 0; k < 64; ++k) {
        Vec cand = S.closest_point(dom.sample_interior(probe));
        if (dom.contains(cand, 1e-9)) return cand;
    }
    throw InfeasibleError("no interior point found on the constraint set");
}

}  // namespace detail

/// Divergence minimizer over a theta-affine (primal-flat) set S with the
/// *second* slot fixed at P: argmin_{Q in S} B_F(theta_Q : theta_P).
/// Unique by strict convexity; the returned point satisfies the projected
/// gradient residual |P_tan (eta_Q - eta_P)|_inf <= tol.
inline Vec project_dual(const DuallyFlatManifold& m, const Vec& theta_p,
                        const AffineSubmanifold& S, double tol = 1e-9,
                        const Vec* start_override = nullptr) {
    if (S.chart() != Chart::Theta)
        throw InfeasibleError("project_dual: constraint must live in the theta chart");
    const PotentialFunction& F = m.potential();
    require_dim(theta_p, F.dim(), "project_dual");
    Vec eta_p = m.to_eta(theta_p);

    // B_F(theta : theta_p) differs from F(theta) - theta.eta_p by a constant.
    detail::ConstrainedObjective obj{
        [&](const Vec& t) { return F.value_unchecked(t) - t.dot(eta_p); },
        [&](const Vec& t) { return Vec(F.gradient(t) - eta_p); },
        [&](const Vec& t) { return F.hessian(t); },
        [&](const Vec& t) { return F.domain().contains(t, 1e-12); }};
    Vec start = start_override ? *start_override : detail::feasible_start(S, F.domain());
    return detail::constrained_newton(obj, S, start, tol);
}

/// Divergence minimizer over an eta-affine (dual-flat) set S with the *first*
/// slot fixed at P: argmin_{Q in S} B_F(theta_P : theta_Q). Solved in eta
/// coordinates, where the objective B_{F*}(eta_Q : eta_P) is convex and the
/// constraint affine; the result is returned in theta coordinates.
inline Vec project_primal(const DuallyFlatManifold& m, const Vec& theta_p,
                          const AffineSubmanifold& S, double tol = 1e-9,
                          const Vec* start_override = nullptr) {
    if (S.chart() != Chart::Eta)
        throw InfeasibleError("project_primal: constraint must live in the eta chart");
    const PotentialFunction& F = m.potential();
    require_dim(theta_p, F.dim(), "project_primal");

    // F*(eta) - eta.theta_p, with grad F*(eta) = theta(eta) and
    // hess F*(eta) = (hess F(theta(eta)))^{-1}. The theta solve is
    // warm-started across evaluations.
    Vec warm = theta_p;
    auto theta_of = [&](const Vec& eta) {
        Vec t = m.to_theta(eta, &warm);
        warm = t;
        return t;
    };
    auto fstar = [&](const Vec& eta) {
        Vec t = theta_of(eta);
        return t.dot(eta) - F.value_unchecked(t);
    };
    detail::ConstrainedObjective obj{
        [&](const Vec& e) { return fstar(e) - e.dot(theta_p); },
        [&](const Vec& e) { return Vec(theta_of(e) - theta_p); },
        [&](const Vec& e) {
            Mat H = F.hessian(theta_of(e));
            return Mat(H.llt().solve(Mat::Identity(H.rows(), H.cols())));
        },
        [&](const Vec& e) {
            if (m.eta_domain() && !m.eta_domain()->contains(e, 1e-12)) return false;
            try {
                theta_of(e);
                return true;
            } catch (const Error&) {
                return false;
            }
        }};

    Domain eta_dom = m.eta_domain() ? *m.eta_domain() : Domain::unbounded(F.dim());
    Vec start = start_override ? *start_override : detail::feasible_start(S, eta_dom);
    if (!obj.valid(start)) throw InfeasibleError("project_primal: start is not in the gradient range");
    Vec eta_q = detail::constrained_newton(obj, S, start, tol);
    return m.to_theta(eta_q);
}

/// The two orthogonality inner products of a point triple:
///   first  = (eta(P) - eta(Q)) . (theta(Q) - theta(R)),
///   second = (theta(P) - theta(Q)) . (eta(Q) - eta(R)).
/// first = 0 is equivalent to D(R:Q) + D(Q:P) = D(R:P), and second = 0 to
/// D(P:Q) + D(Q:R) = D(P:R); whenever a residual (essentially) vanishes the
/// corresponding three-point additivity is verified internally.
inline std::pair<double, double> pythagoras_residuals(const DuallyFlatManifold& m,
                                                       const Vec& tp, const Vec& tq,
                                                       const Vec& tr) {
    Vec ep = m.to_eta(tp), eq = m.to_eta(tq), er = m.to_eta(tr);
    double first = (ep - eq).dot(tq - tr);
    double second = (tp - tq).dot(eq - er);

    const double zero_tol = 1e-10;
    const double add_tol = 1e-8;
    if (std::abs(first) <= zero_tol) {
        double lhs = m.divergence(tr, tq) + m.divergence(tq, tp);
        double rhs = m.divergence(tr, tp);
        if (std::abs(lhs - rhs) > add_tol * std::max(1.0, std::abs(rhs)))
            throw Error("pythagoras_residuals: additivity failed despite orthogonality");
    }
    if (std::abs(second) <= zero_tol) {
        double lhs = m.divergence(tp, tq) + m.divergence(tq, tr);
        double rhs = m.divergence(tp, tr);
        if (std::abs(lhs - rhs) > add_tol * std::max(1.0, std::abs(rhs)))
            throw Error("pythagoras_residuals: additivity failed despite orthogonality");
    }
    return {first, second};
}

struct SetDivergenceResult {
    double value;
    Vec point_s;        // argument point on S (theta chart)
    Vec point_s_prime;  // argument point on S' (theta chart)
    int iterations;
};

/// min over (s, s') in S x S' of B_F(theta_s : theta_s'), S theta-affine and
/// S' eta-affine, by alternating the two projections. Each half-step solves
/// a convex program exactly, so the divergence sequence is non-increasing;
/// iteration stops when the decrease drops below 1e-10.
inline SetDivergenceResult set_divergence(const DuallyFlatManifold& m,
                                          const AffineSubmanifold& S,
                                          const AffineSubmanifold& Sprime,
                                          int max_iter = 500) {
    if (S.chart() != Chart::Theta || Sprime.chart() != Chart::Eta)
        throw InfeasibleError("set_divergence: expects a theta-affine S and an eta-affine S'");

    Domain eta_dom = m.eta_domain() ? *m.eta_domain() : Domain::unbounded(m.dim());
    Vec sp = m.to_theta(detail::feasible_start(Sprime, eta_dom));
    Vec s = project_dual(m, sp, S);
    double d = m.divergence(s, sp);
    for (int it = 1; it <= max_iter; ++it) {
        sp = project_primal(m, s, Sprime);
        s = project_dual(m, sp, S);
        double d2 = m.divergence(s, sp);
        if (d2 > d + 1e-12 * std::max(1.0, std::abs(d)))
            throw Error("set_divergence: divergence increased across a projection pair");
        if (d - d2 < 1e-10) return {d2, s, sp, it};
        d = d2;
    }
    throw ConvergenceError("set_divergence: alternating projections exhausted the budget");
}

}  // namespace infogeo
