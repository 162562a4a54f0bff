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

#include <memory>
#include <vector>

#include "potential.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace infogeo {

/// A fixed mixture component on the real line.
struct ComponentDensity {
    enum class Kind { Gaussian, Laplace, Cauchy };
    Kind kind;
    double a = 0.0;  // location (mu or x0)
    double b = 1.0;  // scale (sigma, b, or gamma)

    static ComponentDensity gaussian(double mu, double sigma) {
        return {Kind::Gaussian, mu, sigma};
    }
    static ComponentDensity laplace(double mu, double b) {
        return {Kind::Laplace, mu, b};
    }
    static ComponentDensity cauchy(double x0, double gamma) {
        return {Kind::Cauchy, x0, gamma};
    }

    double pdf(double x) const {
        switch (kind) {
            case Kind::Gaussian: {
                double z = (x - a) / b;
                return std::exp(-0.5 * z * z) / (b * std::sqrt(2.0 * M_PI));
            }
            case Kind::Laplace:
                return std::exp(-std::abs(x - a) / b) / (2.0 * b);
            case Kind::Cauchy: {
                double z = (x - a) / b;
                return 1.0 / (M_PI * b * (1.0 + z * z));
            }
        }
        return 0.0;
    }

    double draw(Rng& rng) const {
        switch (kind) {
            case Kind::Gaussian: return rng.normal(a, b);
            case Kind::Laplace: return rng.laplace(a, b);
            case Kind::Cauchy: return rng.cauchy(a, b);
        }
        return 0.0;
    }
};

// Mixture with prescribed components p_0..p_{k-1} on a shared real support;
// only the weights vary. With theta the weights of components 1..k-1,
//   m(x; theta) = sum_i theta_i p_i(x) + (1 - sum theta_i) p_0(x),
// on the open simplex interior. The boundary policy keeps evaluations at
// least `kMargin` away from the faces, where the entropy derivative blows up.
class MixtureFamily {
  public:
    static constexpr double kMargin = 1e-9;

    explicit MixtureFamily(std::vector<ComponentDensity> comps)
        : comps_(std::move(comps)), domain_(Domain::simplex_interior(
              static_cast<int>(comps_.size()) - 1, kMargin)) {
        if (comps_.size() < 2)
            throw RangeError("MixtureFamily: need at least two components");
    }

    int dim() const { return static_cast<int>(comps_.size()) - 1; }
    int components() const { return static_cast<int>(comps_.size()); }
    const ComponentDensity& component(int i) const { return comps_[i]; }
    const Domain& domain() const { return domain_; }

    void check_domain(const Vec& theta) const {
        require_dim(theta, dim(), "MixtureFamily");
        if (!domain_.contains(theta))
            throw DomainError("MixtureFamily: weights too close to the simplex boundary");
    }

    double density(const Vec& theta, double x) const {
        double w0 = 1.0 - theta.sum();
        double m = w0 * comps_[0].pdf(x);
        for (int i = 0; i < dim(); ++i) m += theta[i] * comps_[i + 1].pdf(x);
        return m;
    }

    double log_density(const Vec& theta, double x) const {
        check_domain(theta);
        return std::log(density(theta, x));
    }

    /// Score in mixture coordinates: (p_i(x) - p_0(x)) / m(x; theta).
    Vec score(const Vec& theta, double x) const {
        double p0 = comps_[0].pdf(x);
        double m = density(theta, x);
        Vec s(dim());
        for (int i = 0; i < dim(); ++i) s[i] = (comps_[i + 1].pdf(x) - p0) / m;
        return s;
    }

    Mat log_density_hessian(const Vec& theta, double x) const {
        Vec s = score(theta, x);
        return -s * s.transpose();
    }

    double draw(const Vec& theta, Rng& rng) const {
        Vec full(components());
        full[0] = 1.0 - theta.sum();
        full.tail(dim()) = theta;
        return comps_[rng.categorical(full)].draw(rng);
    }

    std::vector<double> sample(const Vec& theta, long n, std::uint64_t seed) const {
        check_domain(theta);
        Rng rng(seed);
        std::vector<double> xs(static_cast<size_t>(n));
        for (auto& x : xs) x = draw(theta, rng);
        return xs;
    }

    /// Metric tensor by quadrature: integral of F_i F_j / m with
    /// F_i = p_i - p_0 (the density is affine in theta). Far tails where
    /// every component underflows contribute nothing.
    Mat fim(const Vec& theta, double abs_tol = 1e-8) const {
        check_domain(theta);
        int d = dim();
        Mat G(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                auto h = [&](double x) {
                    double m = density(theta, x);
                    if (m <= 0.0) return 0.0;
                    double p0 = comps_[0].pdf(x);
                    double fi = comps_[i + 1].pdf(x) - p0;
                    double fj = comps_[j + 1].pdf(x) - p0;
                    return fi * fj / m;
                };
                G(i, j) = G(j, i) = integrate(h, Interval::real_line(), abs_tol);
            }
        return G;
    }

  private:
    std::vector<ComponentDensity> comps_;
    Domain domain_;
};

/// Negative differential entropy of the mixture, integral of m log m — the
/// convex generator of the weight geometry. Quadrature oracle for the
/// Monte-Carlo generator below. Cauchy tails are handled by the tangent fold
/// inside integrate().
inline double generator_exact(const MixtureFamily& fam, const Vec& theta,
                              double abs_tol = 1e-8) {
    fam.check_domain(theta);
    auto h = [&](double x) {
        double m = fam.density(theta, x);
        return m > 0.0 ? m * std::log(m) : 0.0;
    };
    return integrate(h, Interval::real_line(), abs_tol);
}

/// KL between two weight vectors by quadrature of m1 log(m1/m2); the oracle
/// both Bregman routes are checked against.
inline double kl_mixtures(const MixtureFamily& fam, const Vec& theta1,
                          const Vec& theta2, double abs_tol = 1e-8) {
    fam.check_domain(theta1);
    fam.check_domain(theta2);
    auto h = [&](double x) {
        double m1 = fam.density(theta1, x);
        if (m1 <= 0.0) return 0.0;  // both mixtures underflow together
        double m2 = fam.density(theta2, x);
        if (m2 <= 0.0) return 0.0;
        return m1 * (std::log(m1) - std::log(m2));
    };
    return integrate(h, Interval::real_line(), abs_tol);
}

// Importance-sampled surrogate of the exact generator: for a sample set S
// drawn once from the equal-weight component mixture q,
//   F~(theta) = (1/|S|) sum_s m(x_s; theta) log m(x_s; theta) / q(x_s).
// The sample set is frozen at construction, so repeated evaluation is
// bit-identical and the surrogate is convex in theta (m is affine, u log u
// convex). Gradients and Hessians are analytic in the frozen sample.
class MonteCarloGenerator {
  public:
    MonteCarloGenerator(const MixtureFamily& fam, long m, std::uint64_t seed)
        : data_(std::make_shared<Data>()) {
        if (m < 1) throw RangeError("MonteCarloGenerator: need at least one sample");
        Data& d = *data_;
        d.dim = fam.dim();
        d.margin = MixtureFamily::kMargin;
        int k = fam.components();
        Rng rng(seed);
        d.base.resize(m);
        d.diff.resize(m, Vec(d.dim));
        d.w.resize(m);
        for (long s = 0; s < m; ++s) {
            // equal-weight component proposal
            int c = std::min(k - 1, static_cast<int>(rng.uniform() * k));
            double x = fam.component(c).draw(rng);
            double q = 0.0;
            double p0 = fam.component(0).pdf(x);
            d.base[s] = p0;
            q += p0;
            for (int i = 1; i < k; ++i) {
                double pi = fam.component(i).pdf(x);
                d.diff[s][i - 1] = pi - p0;
                q += pi;
            }
            q /= k;
            d.w[s] = 1.0 / (static_cast<double>(m) * q);
            d.samples.push_back(x);
        }
    }

    int dim() const { return data_->dim; }
    long sample_count() const { return static_cast<long>(data_->w.size()); }
    const std::vector<double>& samples() const { return data_->samples; }

    /// Restriction to the first `m` draws; prefixes of one stream form the
    /// nested sample sets used in convergence studies.
    MonteCarloGenerator prefix(long m) const {
        if (m < 1 || m > sample_count())
            throw RangeError("MonteCarloGenerator: bad prefix length");
        MonteCarloGenerator g(*this);
        g.data_ = std::make_shared<Data>(*data_);
        double scale = static_cast<double>(sample_count()) / static_cast<double>(m);
        g.data_->base.resize(m);
        g.data_->diff.resize(m);
        g.data_->w.resize(m);
        g.data_->samples.resize(m);
        for (auto& w : g.data_->w) w *= scale;
        return g;
    }

    double value(const Vec& theta) const {
        const Data& d = *data_;
        double acc = 0.0;
        for (size_t s = 0; s < d.w.size(); ++s) {
            double m = d.base[s] + d.diff[s].dot(theta);
            acc += d.w[s] * m * std::log(m);
        }
        return acc;
    }

    Vec gradient(const Vec& theta) const {
        const Data& d = *data_;
        Vec g = Vec::Zero(d.dim);
        for (size_t s = 0; s < d.w.size(); ++s) {
            double m = d.base[s] + d.diff[s].dot(theta);
            g += (d.w[s] * (1.0 + std::log(m))) * d.diff[s];
        }
        return g;
    }

    Mat hessian(const Vec& theta) const {
        const Data& d = *data_;
        Mat H = Mat::Zero(d.dim, d.dim);
        for (size_t s = 0; s < d.w.size(); ++s) {
            double m = d.base[s] + d.diff[s].dot(theta);
            H += (d.w[s] / m) * (d.diff[s] * d.diff[s].transpose());
        }
        return H;
    }

    Tensor3 third(const Vec& theta) const {
        const Data& d = *data_;
        Tensor3 T(d.dim);
        for (size_t s = 0; s < d.w.size(); ++s) {
            double m = d.base[s] + d.diff[s].dot(theta);
            double c = -d.w[s] / (m * m);
            // one product per index multiset keeps the array exactly symmetric
            for (int i = 0; i < d.dim; ++i)
                for (int j = i; j < d.dim; ++j)
                    for (int k = j; k < d.dim; ++k) {
                        double v = c * d.diff[s][i] * d.diff[s][j] * d.diff[s][k];
                        const int perms[6][3] = {{i, j, k}, {i, k, j}, {j, i, k},
                                                 {j, k, i}, {k, i, j}, {k, j, i}};
                        for (int p = 0; p < 6; ++p) {
                            bool seen = false;
                            for (int q = 0; q < p && !seen; ++q)
                                seen = perms[p][0] == perms[q][0] &&
                                       perms[p][1] == perms[q][1] &&
                                       perms[p][2] == perms[q][2];
                            if (!seen) T(perms[p][0], perms[p][1], perms[p][2]) += v;
                        }
                    }
        }
        return T;
    }

    /// Surrogate Bregman divergence together with its Monte-Carlo standard
    /// error: the divergence is itself a sample mean over the frozen set
    /// (the gradient term telescopes through m1 - m2), so the usual
    /// sd/sqrt(m) applies.
    std::pair<double, double> bregman_with_se(const Vec& theta1, const Vec& theta2) const {
        const Data& d = *data_;
        long m = static_cast<long>(d.w.size());
        double sum = 0.0, sumsq = 0.0;
        for (size_t s = 0; s < d.w.size(); ++s) {
            double m1 = d.base[s] + d.diff[s].dot(theta1);
            double m2 = d.base[s] + d.diff[s].dot(theta2);
            double b = (m * d.w[s]) *
                       (m1 * std::log(m1) - m2 * std::log(m2) -
                        (m1 - m2) * (1.0 + std::log(m2)));
            sum += b;
            sumsq += b * b;
        }
        double mean = sum / m;
        double var = std::max(0.0, sumsq / m - mean * mean);
        return {mean, std::sqrt(var / m)};
    }

    /// The surrogate as a PotentialFunction on the weight simplex; all dually
    /// flat machinery (conversions, projections, clustering) runs on it.
    PotentialFunction as_potential() const {
        auto d = data_;
        PotentialFunction F("mc_generator",
                            Domain::simplex_interior(d->dim, d->margin),
                            [d](const Vec& t) { return MonteCarloGenerator(d).value(t); });
        F.with_gradient([d](const Vec& t) { return MonteCarloGenerator(d).gradient(t); })
            .with_hessian([d](const Vec& t) { return MonteCarloGenerator(d).hessian(t); })
            .with_third([d](const Vec& t) { return MonteCarloGenerator(d).third(t); });
        return F;
    }

  private:
    struct Data {
        int dim = 0;
        double margin = 1e-9;
        std::vector<double> base;   // p_0(x_s)
        std::vector<Vec> diff;      // p_i(x_s) - p_0(x_s)
        std::vector<double> w;      // 1 / (m q(x_s))
        std::vector<double> samples;
    };

    explicit MonteCarloGenerator(std::shared_ptr<Data> d) : data_(std::move(d)) {}

    std::shared_ptr<Data> data_;
};

/// Draw the sample set once and freeze it.
inline MonteCarloGenerator mc_generator(const MixtureFamily& fam, long m,
                                        std::uint64_t seed) {
    return MonteCarloGenerator(fam, m, seed);
}

}  // namespace infogeo
