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

#include "bregman.hpp"
#include "mixture.hpp"
#include "rng.hpp"

namespace infogeo {

// Hard clustering under a Bregman divergence. Points sit in the FIRST
// divergence slot and centers in the SECOND: for that orientation the
// within-cluster sum is minimized by the arithmetic mean of the members,
// so the Lloyd update stays exact for every convex generator.

struct ClusteringProblem {
    std::vector<Vec> points;
    PotentialFunction F;
    int k = 1;
    std::uint64_t seed = 0;
};

struct ClusteringResult {
    std::vector<int> assignments;
    std::vector<Vec> centers;
    double objective = 0.0;  // sum_i B_F(point_i : center_of(i))
    int iterations = 0;
};

/// Careful-seeding initialization adapted to B_F: first center uniform over
/// the points, each further center drawn with probability proportional to the
/// divergence to its nearest chosen center. Duplicates of chosen centers
/// carry zero mass; when every point has zero divergence the lowest-index
/// unchosen point is taken, so k = n selects each point exactly once.
inline std::vector<Vec> kmeanspp_seed(const std::vector<Vec>& points,
                                      const PotentialFunction& F, int k,
                                      std::uint64_t seed) {
    int n = static_cast<int>(points.size());
    if (k < 1 || k > n) throw RangeError("kmeanspp_seed: need 1 <= k <= n");
    Rng rng(seed);
    std::vector<Vec> centers;
    std::vector<char> chosen(n, 0);
    int first = std::min(n - 1, static_cast<int>(rng.uniform() * n));
    centers.push_back(points[first]);
    chosen[first] = 1;

    std::vector<double> nearest(n);
    for (int i = 0; i < n; ++i) nearest[i] = bregman(F, points[i], centers[0]);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (double w : nearest) total += w;
        int pick = -1;
        if (total > 0.0) {
            double u = rng.uniform() * total;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += nearest[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = n - 1;
        } else {
            for (int i = 0; i < n; ++i)
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            if (pick < 0) pick = 0;
        }
        centers.push_back(points[pick]);
        chosen[pick] = 1;
        for (int i = 0; i < n; ++i)
            nearest[i] = std::min(nearest[i], bregman(F, points[i], centers.back()));
    }
    return centers;
}

/// Lloyd iteration: assign each point to the divergence-nearest center (ties
/// to the lowest index), recompute centers as member means, stop when the
/// assignment is stable. The objective is checked to be non-increasing every
/// sweep. An emptied cluster is reseeded at the point farthest from its own
/// center; persistent re-emptying raises EmptyClusterError.
inline ClusteringResult bregman_kmeans(const ClusteringProblem& prob) {
    int n = static_cast<int>(prob.points.size());
    int k = prob.k;
    if (k < 1 || k > n) throw RangeError("bregman_kmeans: need 1 <= k <= n");
    for (const Vec& p : prob.points) prob.F.check_domain(p);

    std::vector<Vec> centers = kmeanspp_seed(prob.points, prob.F, k, prob.seed);
    std::vector<int> assign(n, -1);
    double prev_obj = std::numeric_limits<double>::infinity();
    int iterations = 0;

    for (int it = 0; it < 300; ++it) {
        ++iterations;
        // Assignment sweep.
        bool changed = false;
        double obj = 0.0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bestd = bregman(prob.F, prob.points[i], centers[0]);
            for (int j = 1; j < k; ++j) {
                double d = bregman(prob.F, prob.points[i], centers[j]);
                if (d < bestd) {
                    bestd = d;
                    best = j;
                }
            }
            if (assign[i] != best) changed = true;
            assign[i] = best;
            obj += bestd;
        }
        if (obj > prev_obj + 1e-10 * (1.0 + std::abs(prev_obj)))
            throw Error("bregman_kmeans: objective increased across a sweep");
        prev_obj = obj;

        // Empty-cluster repair: farthest point from its current center.
        std::vector<int> count(k, 0);
        for (int a : assign) ++count[a];
        int repair_rounds = 0;
        while (true) {
            int empty = -1;
            for (int j = 0; j < k; ++j)
                if (count[j] == 0) {
                    empty = j;
                    break;
                }
            if (empty < 0) break;
            if (++repair_rounds > 10)
                throw EmptyClusterError("bregman_kmeans: reseeding loop did not settle");
            int far = 0;
            double fard = -1.0;
            for (int i = 0; i < n; ++i) {
                if (count[assign[i]] <= 1) continue;  // don't empty another cluster
                double d = bregman(prob.F, prob.points[i], centers[assign[i]]);
                if (d > fard) {
                    fard = d;
                    far = i;
                }
            }
            --count[assign[far]];
            assign[far] = empty;
            ++count[empty];
            centers[empty] = prob.points[far];
            changed = true;
        }

        // Mean update (the exact right-centroid step).
        std::vector<Vec> sums(k, Vec::Zero(prob.F.dim()));
        for (int i = 0; i < n; ++i) sums[assign[i]] += prob.points[i];
        for (int j = 0; j < k; ++j) centers[j] = sums[j] / double(count[j]);

        if (!changed && it > 0) break;
    }

    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += bregman(prob.F, prob.points[i], centers[assign[i]]);
    return {assign, centers, obj, iterations};
}

/// Cluster mixture-weight vectors with the Monte-Carlo entropy surrogate.
/// One sample set backs every divergence evaluation (consistency inside a
/// single surrogate geometry); Rng(seed) draws it and Rng(seed+1) drives the
/// k-means++ seeding.
inline ClusteringResult cluster_wmixtures(const MixtureFamily& fam,
                                          const std::vector<Vec>& thetas, int k,
                                          long mc_samples, std::uint64_t seed) {
    for (const Vec& t : thetas) fam.check_domain(t);
    MonteCarloGenerator gen = mc_generator(fam, mc_samples, seed);
    ClusteringProblem prob{thetas, gen.as_potential(), k, seed + 1};
    return bregman_kmeans(prob);
}

}  // namespace infogeo
