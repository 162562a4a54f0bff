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

#include "potential.hpp"

namespace infogeo {

struct ConjugateResult {
    double value;    // F*(eta) = theta*.eta - F(theta*)
    Vec theta;       // argmax, i.e. grad F(theta*) = eta
    double residual; // |grad F(theta*) - eta|_inf
    int iterations;
};

namespace detail {

/// Newton step -H^{-1} g with graceful degradation for marginal Hessians.
inline Vec newton_step(const Mat& H, const Vec& g) {
    Eigen::LLT<Mat> llt(H);
    if (llt.info() == Eigen::Success) {
        Vec s = llt.solve(-g);
        if (s.allFinite()) return s;
    }
    Eigen::LDLT<Mat> ldlt(H);
    if (ldlt.info() == Eigen::Success) {
        Vec s = ldlt.solve(-g);
        if (s.allFinite()) return s;
    }
    return -g;
}

/// Damped Newton minimization of phi(theta) = F(theta) - theta.eta, which is
/// the (negated) Legendre-Fenchel objective. Steps are halved until the
/// objective decreases and the iterate stays strictly inside the domain.
inline ConjugateResult conjugate_newton(const PotentialFunction& F, const Vec& eta,
                                        Vec theta, double tol, int max_iter) {
    const double boundary_slack = 1e-12;
    const Domain& dom = F.domain();
    auto phi = [&](const Vec& t) { return F.value_unchecked(t) - t.dot(eta); };

    double phi0 = phi(theta);
    Vec g = F.gradient(theta) - eta;
    int it = 0;

    // Residual-driven polish: full Newton steps accepted while the gradient
    // residual keeps shrinking. The objective is flat to machine precision
    // near the optimum, so this runs where a value-based search cannot.
    auto polish = [&]() {
        for (int p = 0; p < 8; ++p) {
            double res = g.lpNorm<Eigen::Infinity>();
            Vec step = newton_step(F.hessian(theta), g);
            Vec cand = theta + step;
            if (!dom.contains(cand, boundary_slack)) return;
            Vec gc = F.gradient(cand) - eta;
            if (gc.lpNorm<Eigen::Infinity>() >= res) return;
            theta = cand;
            g = gc;
        }
    };

    for (; it < max_iter; ++it) {
        double res = g.lpNorm<Eigen::Infinity>();
        if (res <= tol) {
            polish();
            return {theta.dot(eta) - F.value_unchecked(theta), theta,
                    g.lpNorm<Eigen::Infinity>(), it};
        }

        Vec step = newton_step(F.hessian(theta), g);

        double t = 1.0;
        bool accepted = false;
        bool domain_blocked = false;
        while (t >= 1e-14) {
            Vec cand = theta + t * step;
            if (!dom.contains(cand, boundary_slack)) {
                domain_blocked = true;
                t *= 0.5;
                continue;
            }
            double pc;
            try {
                pc = phi(cand);
            } catch (const Error&) {
                t *= 0.5;
                continue;
            }
            if (pc < phi0) {
                theta = cand;
                phi0 = pc;
                accepted = true;
                break;
            }
            domain_blocked = false;
            t *= 0.5;
        }
        if (!accepted) {
            if (domain_blocked)
                throw DomainError(F.name() +
                                  ": conjugate line search collapsed at the domain "
                                  "boundary; eta outside the gradient range");
            // No strict value decrease representable: the objective is at
            // its floating-point floor. Drive the residual down directly and
            // accept if the solve is essentially converged.
            polish();
            if (g.lpNorm<Eigen::Infinity>() <= 1e-6)
                return {theta.dot(eta) - F.value_unchecked(theta), theta,
                        g.lpNorm<Eigen::Infinity>(), it};
            throw ConvergenceError(F.name() + ": conjugate line search stalled");
        }
        g = F.gradient(theta) - eta;
    }
    throw ConvergenceError(F.name() + ": conjugate solve exceeded " +
                           std::to_string(max_iter) + " iterations");
}

}  // namespace detail

/// Legendre-Fenchel conjugate F*(eta) = sup_theta { theta.eta - F(theta) },
/// solved to |grad F(theta*) - eta|_inf <= 1e-10 by damped Newton started at
/// a domain-interior reference point.
inline ConjugateResult legendre_conjugate(const PotentialFunction& F, const Vec& eta,
                                          double tol = 1e-10, int max_iter = 200) {
    require_dim(eta, F.dim(), "legendre_conjugate");
    if (F.has_grad_inverse()) {
        Vec theta = F.grad_inverse(eta);
        if (!F.domain().contains(theta))
            throw DomainError(F.name() + ": eta outside the gradient range");
        double res = (F.gradient(theta) - eta).lpNorm<Eigen::Infinity>();
        return {theta.dot(eta) - F.value_unchecked(theta), theta, res, 0};
    }
    return detail::conjugate_newton(F, eta, F.domain().reference(), tol, max_iter);
}

/// Inverse coordinate map theta = (grad F)^{-1}(eta); closed form when the
/// potential carries one, Newton otherwise. `init` warm-starts the solve.
inline Vec eta_to_theta(const PotentialFunction& F, const Vec& eta,
                        const Vec* init = nullptr) {
    require_dim(eta, F.dim(), "eta_to_theta");
    if (F.has_grad_inverse()) {
        Vec theta = F.grad_inverse(eta);
        if (!F.domain().contains(theta))
            throw DomainError(F.name() + ": eta outside the gradient range");
        return theta;
    }
    Vec start = (init && F.domain().contains(*init)) ? *init : F.domain().reference();
    return detail::conjugate_newton(F, eta, start, 1e-10, 200).theta;
}

inline Vec theta_to_eta(const PotentialFunction& F, const Vec& theta) {
    return F.gradient(theta);
}

/// |hess F(theta) . hess F*(eta) - I|_inf at eta = grad F(theta). The dual
/// Hessian is differenced from the inverse coordinate map, so this measures
/// how well the implemented duality closes on itself.
inline double crouzeix_residual(const PotentialFunction& F, const Vec& theta) {
    F.check_domain(theta);
    int d = F.dim();
    Vec eta = F.gradient(theta);
    Mat Hdual(d, d);
    Vec ep = eta;
    Vec warm = theta;
    for (int j = 0; j < d; ++j) {
        // Snap the step so eta +/- h are exactly representable; the identity
        // case then closes to machine precision.
        double h = fd::grad_step(eta[j]);
        double up = eta[j] + h;
        double down = eta[j] - h;
        ep[j] = up;
        Vec tp = eta_to_theta(F, ep, &warm);
        ep[j] = down;
        Vec tm = eta_to_theta(F, ep, &warm);
        ep[j] = eta[j];
        Hdual.col(j) = (tp - tm) / (up - down);
    }
    Mat R = F.hessian(theta) * Hdual - Mat::Identity(d, d);
    return R.cwiseAbs().maxCoeff();
}

/// Totally symmetric array of third derivatives of F.
inline Tensor3 cubic_tensor(const PotentialFunction& F, const Vec& theta) {
    return F.third(theta);
}

}  // namespace infogeo
