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

#include "common.hpp"

namespace infogeo {

/// Symmetric positive-definite matrix acting as a fixed tangent-space metric.
class QuadraticForm {
  public:
    explicit QuadraticForm(Mat g) : g_(std::move(g)) {
        if (g_.rows() != g_.cols())
            throw DimensionError("QuadraticForm: matrix must be square");
        if (!g_.isApprox(g_.transpose(), 1e-12))
            throw Error("QuadraticForm: matrix must be symmetric");
        Eigen::LLT<Mat> llt(g_);
        if (llt.info() != Eigen::Success)
            throw Error("QuadraticForm: matrix must be positive-definite");
    }

    const Mat& matrix() const { return g_; }
    Eigen::Index dim() const { return g_.rows(); }

  private:
    Mat g_;
};

/// sqrt((u-v)^T G (u-v)), the metric distance of a constant metric G.
inline double mahalanobis(const QuadraticForm& q, const Vec& u, const Vec& v) {
    require_dim(u, q.dim(), "mahalanobis");
    require_dim(v, q.dim(), "mahalanobis");
    Vec d = u - v;
    return std::sqrt(d.dot(q.matrix() * d));
}

}  // namespace infogeo
