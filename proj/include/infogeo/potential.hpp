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

#include <functional>
#include <string>
#include <utility>

#include "common.hpp"
#include "domain.hpp"
#include "finitediff.hpp"

namespace infogeo {

// A strictly convex smooth function on an open convex region, the generator
// of a dually flat geometry. Derivatives fall back to central finite
// differences when no analytic form is attached; grad_inv (the inverse of
// the gradient map, when known in closed form) short-circuits the Newton
// inversion used everywhere else.
class PotentialFunction {
  public:
    using ValueFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;
    using HessFn = std::function<Mat(const Vec&)>;
    using ThirdFn = std::function<Tensor3(const Vec&)>;

    PotentialFunction() = default;
    PotentialFunction(std::string name, Domain domain, ValueFn value)
        : name_(std::move(name)), domain_(std::move(domain)), value_(std::move(value)) {}

    PotentialFunction& with_gradient(GradFn g) { grad_ = std::move(g); return *this; }
    PotentialFunction& with_hessian(HessFn h) { hess_ = std::move(h); return *this; }
    PotentialFunction& with_third(ThirdFn t) { third_ = std::move(t); return *this; }
    PotentialFunction& with_grad_inverse(GradFn gi) { grad_inv_ = std::move(gi); return *this; }

    const std::string& name() const { return name_; }
    int dim() const { return domain_.dim(); }
    const Domain& domain() const { return domain_; }

    bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
    bool has_analytic_third() const { return static_cast<bool>(third_); }
    bool has_grad_inverse() const { return static_cast<bool>(grad_inv_); }

    void check_domain(const Vec& theta) const {
        require_dim(theta, dim(), name_.c_str());
        if (!domain_.contains(theta))
            throw DomainError(name_ + ": point on or outside the domain boundary");
    }

    double value(const Vec& theta) const {
        check_domain(theta);
        return value_(theta);
    }

    /// Value without the boundary check; line searches probe with this and
    /// treat an exception as a rejected step.
    double value_unchecked(const Vec& theta) const { return value_(theta); }

    Vec gradient(const Vec& theta) const {
        check_domain(theta);
        if (grad_) return grad_(theta);
        return fd::gradient(value_, theta);
    }

    Mat hessian(const Vec& theta) const {
        check_domain(theta);
        if (hess_) return hess_(theta);
        if (grad_) {
            // Differentiate the analytic gradient; symmetrize the result.
            int d = dim();
            Mat J(d, d);
            Vec xp = theta;
            for (int j = 0; j < d; ++j) {
                double h = fd::grad_step(theta[j]);
                xp[j] = theta[j] + h;
                Vec gp = grad_(xp);
                xp[j] = theta[j] - h;
                Vec gm = grad_(xp);
                xp[j] = theta[j];
                J.col(j) = (gp - gm) / (2.0 * h);
            }
            return 0.5 * (J + J.transpose());
        }
        return fd::hessian(value_, theta);
    }

    /// Totally symmetric third-derivative array.
    Tensor3 third(const Vec& theta) const {
        check_domain(theta);
        if (third_) return third_(theta);
        auto hess = [this](const Vec& x) { return hessianAt(x); };
        return fd::third_from_hessian(hess, theta);
    }

    Vec grad_inverse(const Vec& eta) const {
        if (!grad_inv_) throw Error(name_ + ": no closed-form gradient inverse");
        return grad_inv_(eta);
    }

  private:
    Mat hessianAt(const Vec& x) const {
        if (hess_) return hess_(x);
        if (grad_) {
            int d = dim();
            Mat J(d, d);
            Vec xp = x;
            for (int j = 0; j < d; ++j) {
                double h = fd::grad_step(x[j]);
                xp[j] = x[j] + h;
                Vec gp = grad_(xp);
                xp[j] = x[j] - h;
                Vec gm = grad_(xp);
                xp[j] = x[j];
                J.col(j) = (gp - gm) / (2.0 * h);
            }
            return 0.5 * (J + J.transpose());
        }
        return fd::hessian(value_, x);
    }

    std::string name_;
    Domain domain_ = Domain::unbounded(0);
    ValueFn value_;
    GradFn grad_;
    HessFn hess_;
    ThirdFn third_;
    GradFn grad_inv_;
};

/// eta = grad F(theta); analytic when attached, else central differences.
inline Vec grad(const PotentialFunction& F, const Vec& theta) {
    return F.gradient(theta);
}

}  // namespace infogeo
