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
#include <string>
#include <vector>

#include "bregman.hpp"
#include "legendre.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace infogeo {

/// Where a family's observations live: a finite outcome set {0..k-1}, the
/// nonnegative integers, or a real interval.
struct SampleSpace {
    enum class Kind { Finite, Countable, Real };
    Kind kind;
    int finite_size = 0;
    Interval interval{0.0, 0.0};

    static SampleSpace finite(int k) { return {Kind::Finite, k, {}}; }
    static SampleSpace countable() { return {Kind::Countable, 0, {}}; }
    static SampleSpace real(Interval iv) { return {Kind::Real, 0, iv}; }

    bool contains(double x) const {
        switch (kind) {
            case Kind::Finite:
                return x == std::floor(x) && x >= 0.0 && x < finite_size;
            case Kind::Countable:
                return x == std::floor(x) && x >= 0.0;
            case Kind::Real:
                return x >= interval.lo && x <= interval.hi;
        }
        return false;
    }
};

// Canonical-form exponential family: densities
//   p(x; theta) = exp(t(x).theta - F(theta) + k(x)),
// with t the sufficient statistic, k the carrier term and F the cumulant
// (a PotentialFunction carrying the dual coordinate machinery).
class ExponentialFamily {
  public:
    using SufficientFn = std::function<Vec(double)>;
    using CarrierFn = std::function<double(double)>;
    using DrawFn = std::function<double(const Vec&, Rng&)>;

    ExponentialFamily(std::string name, PotentialFunction cumulant, SufficientFn t,
                      CarrierFn k, SampleSpace space, DrawFn draw)
        : name_(std::move(name)),
          cumulant_(std::move(cumulant)),
          sufficient_(std::move(t)),
          carrier_(std::move(k)),
          space_(space),
          draw_(std::move(draw)) {}

    const std::string& name() const { return name_; }
    int dim() const { return cumulant_.dim(); }
    const PotentialFunction& cumulant() const { return cumulant_; }
    const SampleSpace& sample_space() const { return space_; }

    Vec sufficient(double x) const { return sufficient_(x); }
    double carrier(double x) const { return carrier_(x); }

    double log_density(const Vec& theta, double x) const {
        cumulant_.check_domain(theta);
        if (!space_.contains(x))
            throw DomainError(name_ + ": observation outside the sample space");
        return sufficient_(x).dot(theta) - cumulant_.value_unchecked(theta) + carrier_(x);
    }

    double density(const Vec& theta, double x) const {
        return std::exp(log_density(theta, x));
    }

    /// Metric tensor at theta: the cumulant Hessian, which equals the
    /// covariance of the sufficient statistic.
    Mat fim(const Vec& theta) const { return cumulant_.hessian(theta); }

    /// KL[p_theta1 : p_theta2] = B_F(theta2 : theta1); note the swap.
    double kl(const Vec& theta1, const Vec& theta2) const {
        return bregman(cumulant_, theta2, theta1);
    }

    Vec theta_to_eta(const Vec& theta) const { return cumulant_.gradient(theta); }
    Vec eta_to_theta(const Vec& eta) const { return infogeo::eta_to_theta(cumulant_, eta); }

    /// Score grad_theta log p; for the canonical form this is t(x) - eta.
    Vec score(const Vec& theta, double x) const {
        return sufficient_(x) - cumulant_.gradient(theta);
    }

    /// Hessian of log p in theta; constant in x (minus the cumulant Hessian).
    Mat log_density_hessian(const Vec& theta, double /*x*/) const {
        return -cumulant_.hessian(theta);
    }

    double draw(const Vec& theta, Rng& rng) const { return draw_(theta, rng); }

    /// n reproducible draws; the seed pins the stream exactly.
    std::vector<double> sample(const Vec& theta, long n, std::uint64_t seed) const {
        if (n < 1) throw RangeError(name_ + ": sample size must be >= 1");
        cumulant_.check_domain(theta);
        Rng rng(seed);
        std::vector<double> xs(static_cast<size_t>(n));
        for (auto& x : xs) x = draw_(theta, rng);
        return xs;
    }

  private:
    std::string name_;
    PotentialFunction cumulant_;
    SufficientFn sufficient_;
    CarrierFn carrier_;
    SampleSpace space_;
    DrawFn draw_;
};

/// Sum or integrate h over the family's sample space (the reference measure
/// being counting or Lebesgue). Used by the quadrature oracles.
inline double integrate_over_sample_space(const ExponentialFamily& fam,
                                          const std::function<double(double)>& h,
                                          double abs_tol = 1e-10) {
    const SampleSpace& sp = fam.sample_space();
    switch (sp.kind) {
        case SampleSpace::Kind::Finite: {
            double s = 0.0;
            for (int x = 0; x < sp.finite_size; ++x) s += h(x);
            return s;
        }
        case SampleSpace::Kind::Countable:
            return sum_series([&h](long x) { return h(static_cast<double>(x)); });
        case SampleSpace::Kind::Real:
            return integrate(h, sp.interval, abs_tol);
    }
    throw Error("unreachable");
}

/// KL by direct summation/quadrature; the independent route against the
/// closed-form Bregman identity.
inline double kl_numeric(const ExponentialFamily& fam, const Vec& theta1,
                         const Vec& theta2, double abs_tol = 1e-10) {
    auto h = [&](double x) {
        double l1 = fam.log_density(theta1, x);
        return std::exp(l1) * (l1 - fam.log_density(theta2, x));
    };
    return integrate_over_sample_space(fam, h, abs_tol);
}

namespace families {

inline ExponentialFamily bernoulli() {
    return ExponentialFamily(
        "bernoulli", potentials::bernoulli(),
        [](double x) { return Vec::Constant(1, x); }, [](double) { return 0.0; },
        SampleSpace::finite(2),
        [](const Vec& theta, Rng& rng) {
            return rng.bernoulli(potentials::sigmoid(theta[0])) ? 1.0 : 0.0;
        });
}

/// k outcomes {0..k-1}; the last outcome is the reference and
/// t_i(x) = 1[x = i] for i < k-1 (natural dimension k-1).
inline ExponentialFamily categorical(int k) {
    if (k < 2) throw RangeError("categorical: need at least 2 outcomes");
    int d = k - 1;
    PotentialFunction F = potentials::categorical(k);
    return ExponentialFamily(
        "categorical", F,
        [d](double x) {
            Vec t = Vec::Zero(d);
            int xi = static_cast<int>(x);
            if (xi < d) t[xi] = 1.0;
            return t;
        },
        [](double) { return 0.0; }, SampleSpace::finite(k),
        [F, k, d](const Vec& theta, Rng& rng) {
            Vec eta = F.gradient(theta);
            Vec full(k);
            full.head(d) = eta;
            full[d] = 1.0 - eta.sum();
            return static_cast<double>(rng.categorical(full));
        });
}

inline ExponentialFamily poisson() {
    return ExponentialFamily(
        "poisson", potentials::poisson(),
        [](double x) { return Vec::Constant(1, x); },
        [](double x) { return -std::lgamma(x + 1.0); }, SampleSpace::countable(),
        [](const Vec& theta, Rng& rng) {
            return static_cast<double>(rng.poisson(std::exp(theta[0])));
        });
}

/// Normal location family with fixed scale sigma: theta = mu, t(x) = x/sigma^2.
inline ExponentialFamily gaussian_fixed_var(double sigma) {
    double s2 = sigma * sigma;
    return ExponentialFamily(
        "gaussian_fixed_var", potentials::gaussian_location(sigma),
        [s2](double x) { return Vec::Constant(1, x / s2); },
        [s2](double x) { return -x * x / (2.0 * s2) - 0.5 * std::log(2.0 * M_PI * s2); },
        SampleSpace::real(Interval::real_line()),
        [sigma](const Vec& theta, Rng& rng) { return rng.normal(theta[0], sigma); });
}

/// Two-parameter normal in natural coordinates; t(x) = (x, x^2).
inline ExponentialFamily gaussian() {
    return ExponentialFamily(
        "gaussian", potentials::gaussian_meanvar(),
        [](double x) { return (Vec(2) << x, x * x).finished(); },
        [](double) { return -0.5 * std::log(2.0 * M_PI); },
        SampleSpace::real(Interval::real_line()),
        [](const Vec& theta, Rng& rng) {
            double var = -0.5 / theta[1];
            double mu = theta[0] * var;
            return rng.normal(mu, std::sqrt(var));
        });
}

inline ExponentialFamily exponential() {
    return ExponentialFamily(
        "exponential", potentials::exponential(),
        [](double x) { return Vec::Constant(1, x); }, [](double) { return 0.0; },
        SampleSpace::real({0.0, std::numeric_limits<double>::infinity()}),
        [](const Vec& theta, Rng& rng) { return rng.exponential(-theta[0]); });
}

}  // namespace families
}  // namespace infogeo
