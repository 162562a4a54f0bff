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

#include <limits>

#include "common.hpp"
#include "rng.hpp"

namespace infogeo {

// Open convex parameter region. Two descriptors cover every family in this
// library: an axis-aligned box with possibly infinite bounds (half-line
// products included), and the open unit-simplex interior
// {theta_i > margin, sum theta_i < 1 - margin}.
class Domain {
  public:
    enum class Kind { Box, Simplex };

    static Domain box(const Vec& lo, const Vec& hi) {
        Domain d;
        d.kind_ = Kind::Box;
        d.dim_ = static_cast<int>(lo.size());
        d.lo_ = lo;
        d.hi_ = hi;
        return d;
    }

    static Domain unbounded(int dim) {
        double inf = std::numeric_limits<double>::infinity();
        return box(Vec::Constant(dim, -inf), Vec::Constant(dim, inf));
    }

    static Domain positive(int dim) {
        double inf = std::numeric_limits<double>::infinity();
        return box(Vec::Zero(dim), Vec::Constant(dim, inf));
    }

    static Domain negative(int dim) {
        double inf = std::numeric_limits<double>::infinity();
        return box(Vec::Constant(dim, -inf), Vec::Zero(dim));
    }

    static Domain simplex_interior(int dim, double margin = 1e-9) {
        Domain d;
        d.kind_ = Kind::Simplex;
        d.dim_ = dim;
        d.margin_ = margin;
        return d;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double simplex_margin() const { return margin_; }

    bool contains(const Vec& x, double slack = 0.0) const {
        if (x.size() != dim_) return false;
        if (kind_ == Kind::Box) {
            for (int i = 0; i < dim_; ++i)
                if (!(x[i] > lo_[i] + slack && x[i] < hi_[i] - slack)) return false;
            return true;
        }
        double tol = margin_ * (1.0 - 1e-9);
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
            if (!(x[i] >= tol + slack)) return false;
            s += x[i];
        }
        return s <= 1.0 - tol - slack;
    }

    /// A point safely inside the region; Newton solves start here.
    Vec reference() const {
        if (kind_ == Kind::Simplex)
            return Vec::Constant(dim_, 1.0 / (dim_ + 1));
        Vec r(dim_);
        for (int i = 0; i < dim_; ++i) {
            bool lf = std::isfinite(lo_[i]), hf = std::isfinite(hi_[i]);
            if (lf && hf) r[i] = 0.5 * (lo_[i] + hi_[i]);
            else if (lf) r[i] = lo_[i] + 1.0;
            else if (hf) r[i] = hi_[i] - 1.0;
            else r[i] = 0.0;
        }
        return r;
    }

    /// Random interior point; infinite directions sample a moderate range.
    /// Used by property tests and seeding, not part of any numeric contract.
    Vec sample_interior(Rng& rng) const {
        if (kind_ == Kind::Simplex) {
            Vec e(dim_ + 1);
            for (int i = 0; i <= dim_; ++i) e[i] = rng.exponential(1.0);
            Vec x = e.head(dim_) / e.sum();
            Vec ref = reference();
            return 0.9 * x + 0.1 * ref;  // keep clear of the faces
        }
        Vec x(dim_);
        for (int i = 0; i < dim_; ++i) {
            bool lf = std::isfinite(lo_[i]), hf = std::isfinite(hi_[i]);
            double a, b;
            if (lf && hf) {
                double w = hi_[i] - lo_[i];
                a = lo_[i] + 0.05 * w;
                b = hi_[i] - 0.05 * w;
            } else if (lf) {
                a = lo_[i] + 0.1;
                b = lo_[i] + 3.0;
            } else if (hf) {
                a = hi_[i] - 3.0;
                b = hi_[i] - 0.1;
            } else {
                a = -3.0;
                b = 3.0;
            }
            x[i] = rng.uniform(a, b);
        }
        return x;
    }

    const Vec& lower() const { return lo_; }
    const Vec& upper() const { return hi_; }

  private:
    Kind kind_ = Kind::Box;
    int dim_ = 0;
    Vec lo_, hi_;
    double margin_ = 1e-9;
};

}  // namespace infogeo
