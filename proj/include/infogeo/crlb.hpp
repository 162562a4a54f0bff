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

#include "expfam.hpp"

namespace infogeo {

/// Empirical check of the estimator-variance lower bound. Each trial fits the
/// moment-matching maximum-likelihood estimate (eta_hat = mean sufficient
/// statistic, mapped back to theta_hat); the report compares the across-trial
/// covariances against the inverse information over n in both charts.
struct CrlbReport {
    Mat cov_theta;      // empirical covariance of theta_hat
    Mat crlb_theta;     // I(theta)^{-1} / n
    Mat gap_theta;      // cov_theta - crlb_theta
    Mat cov_eta;        // empirical covariance of eta_hat
    Mat crlb_eta;       // grad^2 F(theta) / n  (inverse information in eta chart)
    Mat gap_eta;
    double min_eig_gap_theta = 0.0;
    double min_eig_gap_eta = 0.0;
    double bootstrap_se_theta = 0.0;  // bootstrap SE of min_eig_gap_theta
    double bootstrap_se_eta = 0.0;
    long n = 0;
    int trials = 0;
};

namespace detail {

inline Mat covariance(const std::vector<Vec>& xs) {
    int d = static_cast<int>(xs[0].size());
    Vec mean = Vec::Zero(d);
    for (const Vec& x : xs) mean += x;
    mean /= double(xs.size());
    Mat c = Mat::Zero(d, d);
    for (const Vec& x : xs) {
        Vec e = x - mean;
        c += e * e.transpose();
    }
    return c / double(xs.size() - 1);
}

inline double min_eigenvalue(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    return es.eigenvalues().minCoeff();
}

}  // namespace detail

inline CrlbReport crlb_empirical(const ExponentialFamily& fam, const Vec& theta, long n,
                                 int trials, std::uint64_t seed) {
    if (trials < 2) throw RangeError("crlb_empirical: need at least 2 trials");
    int d = fam.dim();
    std::vector<Vec> eta_hats;
    std::vector<Vec> theta_hats;
    eta_hats.reserve(trials);
    theta_hats.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        Vec eta_hat = Vec::Zero(d);
        for (long i = 0; i < n; ++i) eta_hat += fam.sufficient(fam.draw(theta, rng));
        eta_hat /= double(n);
        eta_hats.push_back(eta_hat);
        theta_hats.push_back(fam.eta_to_theta(eta_hat));
    }

    CrlbReport r;
    r.n = n;
    r.trials = trials;
    Mat I = fam.fim(theta);
    r.crlb_theta = I.llt().solve(Mat::Identity(d, d)) / double(n);
    r.crlb_eta = I / double(n);
    r.cov_theta = detail::covariance(theta_hats);
    r.cov_eta = detail::covariance(eta_hats);
    r.gap_theta = r.cov_theta - r.crlb_theta;
    r.gap_eta = r.cov_eta - r.crlb_eta;
    r.min_eig_gap_theta = detail::min_eigenvalue(r.gap_theta);
    r.min_eig_gap_eta = detail::min_eigenvalue(r.gap_eta);

    // Bootstrap the trial set to put a scale on the min-eigenvalue noise.
    const int B = 200;
    Rng boot(derive_seed(seed, 0x9e3779b9));
    std::vector<double> eig_t(B), eig_e(B);
    std::vector<Vec> rt(trials), re(trials);
    for (int b = 0; b < B; ++b) {
        for (int t = 0; t < trials; ++t) {
            int j = std::min(trials - 1, static_cast<int>(boot.uniform() * trials));
            rt[t] = theta_hats[j];
            re[t] = eta_hats[j];
        }
        eig_t[b] = detail::min_eigenvalue(detail::covariance(rt) - r.crlb_theta);
        eig_e[b] = detail::min_eigenvalue(detail::covariance(re) - r.crlb_eta);
    }
    auto sd = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= v.size();
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return std::sqrt(s / (v.size() - 1));
    };
    r.bootstrap_se_theta = sd(eig_t);
    r.bootstrap_se_eta = sd(eig_e);
    return r;
}

}  // namespace infogeo
