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

#include <algorithm>
#include <functional>
#include <vector>

#include "fdivergence.hpp"

namespace infogeo {

/// Geodesic metric distance between finite distributions under the
/// information metric: 2 arccos(sum_i sqrt(p_i q_i)). The square-root map
/// embeds the simplex on a radius-2 sphere, so distances are arc lengths
/// and the triangle inequality is inherited.
inline double rao_distance_categorical(const DiscreteDistribution& p,
                                       const DiscreteDistribution& q) {
    if (p.size() != q.size())
        throw DimensionError("rao_distance_categorical: size mismatch");
    double bc = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0 || q[i] <= 0.0)
            throw SupportError("rao_distance_categorical: zero entry");
        bc += std::sqrt(p[i] * q[i]);
    }
    return 2.0 * std::acos(std::clamp(bc, -1.0, 1.0));
}

struct RaoPathResult {
    double distance;
    double initial_length;  // straight-line path length, for reference
    std::vector<Vec> path;  // optimized nodes, theta coordinates
};

/// Riemannian distance by discretized path-energy descent: the path is
/// discretized into `segments` theta-linear pieces, interior nodes are moved
/// by metric-preconditioned gradient descent on the energy sum (midpoint
/// metric), and the length of the optimized path is returned. Initialization
/// is the straight line, so the result can only shorten it. The step starts
/// at 1e-2, grows on success and halves whenever the energy increases.
template <class MetricModel>
RaoPathResult rao_distance_numeric(const MetricModel& model, const Vec& theta1,
                                   const Vec& theta2, int segments = 100,
                                   int iterations = 2000) {
    if (segments < 16) throw RangeError("rao_distance_numeric: need >= 16 segments");
    int d = static_cast<int>(theta1.size());
    int nodes = segments + 1;
    std::vector<Vec> path(nodes);
    for (int u = 0; u < nodes; ++u) {
        double t = static_cast<double>(u) / segments;
        path[u] = (1.0 - t) * theta1 + t * theta2;
    }

    auto segment_energy = [&](const Vec& a, const Vec& b) {
        Vec mid = 0.5 * (a + b);
        Vec dv = b - a;
        return segments * dv.dot(model.fim(mid) * dv);
    };
    auto total_energy = [&]() {
        double e = 0.0;
        for (int u = 0; u < segments; ++u) e += segment_energy(path[u], path[u + 1]);
        return e;
    };
    auto path_length = [&](const std::vector<Vec>& ps) {
        double len = 0.0;
        for (int u = 0; u < segments; ++u) {
            Vec mid = 0.5 * (ps[u] + ps[u + 1]);
            Vec dv = ps[u + 1] - ps[u];
            len += std::sqrt(std::max(0.0, dv.dot(model.fim(mid) * dv)));
        }
        return len;
    };

    double initial_length = path_length(path);
    if ((theta1 - theta2).lpNorm<Eigen::Infinity>() == 0.0)
        return {0.0, 0.0, path};

    double step = 1e-2;
    double energy = total_energy();
    for (int it = 0; it < iterations && step > 1e-14; ++it) {
        // Local energy gradient: node u only touches segments u-1 and u.
        // Preconditioning by the local metric (times the diagonal energy
        // scale 2 * segments) equalizes the mode stiffness, without which
        // descent on a fine path discretization crawls.
        std::vector<Vec> grad(nodes, Vec::Zero(d));
        for (int u = 1; u < segments; ++u) {
            for (int c = 0; c < d; ++c) {
                double h = fd::grad_step(path[u][c]);
                Vec save = path[u];
                path[u][c] = save[c] + h;
                double ep = segment_energy(path[u - 1], path[u]) +
                            segment_energy(path[u], path[u + 1]);
                path[u][c] = save[c] - h;
                double em = segment_energy(path[u - 1], path[u]) +
                            segment_energy(path[u], path[u + 1]);
                path[u] = save;
                grad[u][c] = (ep - em) / (2.0 * h);
            }
            Mat scale = 2.0 * segments * model.fim(path[u]);
            Eigen::LLT<Mat> llt(scale);
            if (llt.info() == Eigen::Success) grad[u] = llt.solve(grad[u]);
        }
        std::vector<Vec> cand = path;
        for (int u = 1; u < segments; ++u) cand[u] -= step * grad[u];
        std::vector<Vec> saved = path;
        path = cand;
        double e2;
        bool ok = true;
        try {
            e2 = total_energy();
        } catch (const Error&) {
            ok = false;
            e2 = energy;
        }
        if (!ok || e2 >= energy) {
            path = saved;  // reject and shrink the step
            step *= 0.5;
        } else {
            energy = e2;
            step = std::min(1.0, step * 1.3);
        }
    }

    double len = path_length(path);
    if (len > initial_length + 1e-9)
        throw ConvergenceError("rao_distance_numeric: optimized path longer than the chord");
    return {len, initial_length, path};
}

}  // namespace infogeo
