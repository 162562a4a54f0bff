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

#include <optional>

#include "bregman.hpp"
#include "legendre.hpp"

namespace infogeo {

/// Which global affine chart a constraint or geodesic lives in.
enum class Chart { Theta, Eta };

/// A point in both global charts: eta = grad F(theta).
struct DualCoords {
    Vec theta;
    Vec eta;
};

// Pairing of a convex potential with its dual coordinate machinery. Both
// charts are global: theta is the primal affine coordinate, eta = grad F its
// dual. An optional eta-domain (the gradient range, when describable)
// supports feasibility handling for dual-chart constraints.
class DuallyFlatManifold {
  public:
    explicit DuallyFlatManifold(PotentialFunction F,
                                std::optional<Domain> eta_domain = std::nullopt)
        : F_(std::move(F)), eta_domain_(std::move(eta_domain)) {}

    const PotentialFunction& potential() const { return F_; }
    int dim() const { return F_.dim(); }
    const std::optional<Domain>& eta_domain() const { return eta_domain_; }

    Vec to_eta(const Vec& theta) const { return F_.gradient(theta); }
    Vec to_theta(const Vec& eta, const Vec* warm = nullptr) const {
        return eta_to_theta(F_, eta, warm);
    }
    DualCoords coords(const Vec& theta) const { return {theta, to_eta(theta)}; }

    double divergence(const Vec& theta1, const Vec& theta2) const {
        return bregman(F_, theta1, theta2);
    }

  private:
    PotentialFunction F_;
    std::optional<Domain> eta_domain_;
};

/// Affine constraint A x = b on one chart's coordinates. Requires full row
/// rank with fewer rows than the ambient dimension, so a proper flat
/// submanifold remains.
class AffineSubmanifold {
  public:
    AffineSubmanifold(Chart chart, Mat A, Vec b)
        : chart_(chart), A_(std::move(A)), b_(std::move(b)) {
        if (A_.rows() != b_.size())
            throw DimensionError("AffineSubmanifold: A and b disagree");
        if (A_.rows() >= A_.cols())
            throw DimensionError("AffineSubmanifold: need fewer constraints than dimensions");
        Eigen::ColPivHouseholderQR<Mat> qr(A_);
        if (qr.rank() < A_.rows())
            throw Error("AffineSubmanifold: constraint matrix is row-rank deficient");
    }

    Chart chart() const { return chart_; }
    const Mat& A() const { return A_; }
    const Vec& b() const { return b_; }
    Eigen::Index ambient_dim() const { return A_.cols(); }

    bool satisfied(const Vec& x, double tol = 1e-9) const {
        return (A_ * x - b_).lpNorm<Eigen::Infinity>() <= tol;
    }

    /// Projector onto the constraint null space (tangent directions).
    Mat tangent_projector() const {
        Mat AAt = A_ * A_.transpose();
        return Mat::Identity(A_.cols(), A_.cols()) -
               A_.transpose() * AAt.ldlt().solve(A_);
    }

    /// Point of the affine set nearest to `anchor` in the Euclidean sense.
    Vec closest_point(const Vec& anchor) const {
        Mat AAt = A_ * A_.transpose();
        return anchor + A_.transpose() * AAt.ldlt().solve(b_ - A_ * anchor);
    }

  private:
    Chart chart_;
    Mat A_;
    Vec b_;
};

// Geodesic between two points, straight in its chart: theta-linear for the
// primal connection, eta-linear for the dual one.
class GeodesicSegment {
  public:
    enum class Kind { Primal, Dual };

    GeodesicSegment(const DuallyFlatManifold& m, Kind kind, Vec theta_p, Vec theta_q)
        : mfd_(&m), kind_(kind), tp_(std::move(theta_p)), tq_(std::move(theta_q)) {
        if (kind_ == Kind::Dual) {
            ep_ = mfd_->to_eta(tp_);
            eq_ = mfd_->to_eta(tq_);
        }
    }

    Kind kind() const { return kind_; }

    Vec point_theta(double t) const {
        if (kind_ == Kind::Primal) return (1.0 - t) * tp_ + t * tq_;
        Vec eta = (1.0 - t) * ep_ + t * eq_;
        return mfd_->to_theta(eta);
    }

    Vec point_eta(double t) const {
        if (kind_ == Kind::Dual) return (1.0 - t) * ep_ + t * eq_;
        return mfd_->to_eta(point_theta(t));
    }

  private:
    const DuallyFlatManifold* mfd_;
    Kind kind_;
    Vec tp_, tq_;
    Vec ep_, eq_;
};

/// Signed membership function of the dual-straight bisector of theta1 and
/// theta2: F(theta1) - F(theta2) + eta(P).(theta2 - theta1). Vanishes exactly
/// where the divergences from theta1 and theta2 to P agree, and is affine in
/// eta(P).
inline double m_bisector_value(const DuallyFlatManifold& m, const Vec& theta1,
                               const Vec& theta2, const Vec& theta_p) {
    if ((theta1 - theta2).lpNorm<Eigen::Infinity>() == 0.0)
        throw DegenerateError("m_bisector_value: the two poles coincide");
    const PotentialFunction& F = m.potential();
    return F.value(theta1) - F.value(theta2) + m.to_eta(theta_p).dot(theta2 - theta1);
}

}  // namespace infogeo
