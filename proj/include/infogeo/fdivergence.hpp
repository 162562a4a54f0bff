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

#include <vector>

#include "fgenerator.hpp"
#include "quadrature.hpp"

namespace infogeo {

/// Probability vector; entries nonnegative, summing to one within 1e-12.
class DiscreteDistribution {
  public:
    explicit DiscreteDistribution(Vec probs) : p_(std::move(probs)) {
        for (int i = 0; i < p_.size(); ++i)
            if (p_[i] < 0.0)
                throw DomainError("DiscreteDistribution: negative entry");
        if (std::abs(p_.sum() - 1.0) > 1e-12)
            throw DomainError("DiscreteDistribution: entries must sum to 1");
    }

    const Vec& probs() const { return p_; }
    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[i]; }

  private:
    Vec p_;
};

/// I_f(p : q) = sum_i p_i f(q_i / p_i). Zero bins follow the generator's
/// boundary conventions: q_i = 0 contributes p_i * lim_{u->0+} f(u) (an
/// infinite limit propagates as an infinite value), and p_i = 0 contributes
/// q_i * lim f(u)/u, raising SupportError when that slope is infinite.
inline double f_divergence(const FGenerator& gen, const DiscreteDistribution& p,
                           const DiscreteDistribution& q) {
    if (p.size() != q.size())
        throw DimensionError("f_divergence: distributions differ in size");
    double total = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        double pi = p[i], qi = q[i];
        if (pi > 0.0 && qi > 0.0) {
            total += pi * gen.f(qi / pi);
        } else if (pi > 0.0) {  // qi == 0
            if (std::isinf(gen.limit_zero)) return gen.limit_zero;
            total += pi * gen.limit_zero;
        } else if (qi > 0.0) {  // pi == 0
            if (std::isinf(gen.slope_inf))
                throw SupportError("f_divergence: generator '" + gen.name +
                                   "' has no finite slope at infinity for a zero "
                                   "reference bin");
            total += qi * gen.slope_inf;
        }
    }
    return total;
}

inline double f_divergence(const FGenerator& gen, const Vec& p, const Vec& q) {
    return f_divergence(gen, DiscreteDistribution(p), DiscreteDistribution(q));
}

/// Continuous counterpart: integral of p(x) f(q(x)/p(x)) over the support,
/// adaptive quadrature at the given absolute tolerance.
inline double f_divergence_continuous(const FGenerator& gen,
                                      const std::function<double(double)>& p,
                                      const std::function<double(double)>& q,
                                      Interval support, double abs_tol = 1e-9) {
    auto integrand = [&](double x) {
        double px = p(x);
        if (px <= 0.0) return 0.0;
        return px * gen.f(q(x) / px);
    };
    return integrate(integrand, support, abs_tol);
}

/// Sum bins of a discrete distribution over a partition of its indices.
/// The partition must cover every index exactly once.
inline DiscreteDistribution coarse_grain(const DiscreteDistribution& p,
                                         const std::vector<std::vector<int>>& partition) {
    std::vector<int> seen(p.size(), 0);
    Vec out(partition.size());
    for (size_t b = 0; b < partition.size(); ++b) {
        double s = 0.0;
        for (int j : partition[b]) {
            if (j < 0 || j >= p.size())
                throw PartitionError("coarse_grain: index out of range");
            if (seen[j]++)
                throw PartitionError("coarse_grain: index " + std::to_string(j) +
                                     " appears in two bins");
            s += p[j];
        }
        out[static_cast<int>(b)] = s;
    }
    for (int j = 0; j < p.size(); ++j)
        if (!seen[j])
            throw PartitionError("coarse_grain: index " + std::to_string(j) +
                                 " not covered");
    return DiscreteDistribution(out);
}

}  // namespace infogeo
