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

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace infogeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy shared by all modules. Every failure mode surfaced by the
// library derives from Error so callers can catch numeric failures in one
// place (the CLI maps them to exit code 2).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct SupportError : Error { using Error::Error; };
struct PartitionError : Error { using Error::Error; };
struct DegenerateGeneratorError : Error { using Error::Error; };
struct QuadratureError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct SingularMetricError : Error { using Error::Error; };
struct EmptyClusterError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct ParseError : Error {
    ParseError(const std::string& field, const std::string& msg)
        : Error("field '" + field + "': " + msg), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

inline void require_dim(const Vec& v, Eigen::Index d, const char* what) {
    if (v.size() != d)
        throw DimensionError(std::string(what) + ": expected dimension " +
                             std::to_string(d) + ", got " + std::to_string(v.size()));
}

/// Dense rank-3 array of shape D x D x D.
class Tensor3 {
  public:
    Tensor3() : d_(0) {}
    explicit Tensor3(int d) : d_(d), v_(static_cast<size_t>(d) * d * d, 0.0) {}

    int dim() const { return d_; }

    double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
    double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

    /// Average over all six index permutations.
    Tensor3 symmetrized() const {
        Tensor3 t(d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                for (int k = 0; k < d_; ++k)
                    t(i, j, k) = ((*this)(i, j, k) + (*this)(i, k, j) +
                                  (*this)(j, i, k) + (*this)(j, k, i) +
                                  (*this)(k, i, j) + (*this)(k, j, i)) / 6.0;
        return t;
    }

    /// Largest deviation between permuted entries; zero iff totally symmetric.
    double symmetry_gap() const {
        double g = 0.0;
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                for (int k = 0; k < d_; ++k) {
                    double a = (*this)(i, j, k);
                    g = std::max(g, std::abs(a - (*this)(i, k, j)));
                    g = std::max(g, std::abs(a - (*this)(j, i, k)));
                    g = std::max(g, std::abs(a - (*this)(j, k, i)));
                    g = std::max(g, std::abs(a - (*this)(k, i, j)));
                    g = std::max(g, std::abs(a - (*this)(k, j, i)));
                }
        return g;
    }

    Tensor3& operator+=(const Tensor3& o) {
        for (size_t n = 0; n < v_.size(); ++n) v_[n] += o.v_[n];
        return *this;
    }
    Tensor3& operator*=(double s) {
        for (double& x : v_) x *= s;
        return *this;
    }
    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) {
        for (size_t n = 0; n < a.v_.size(); ++n) a.v_[n] -= b.v_[n];
        return a;
    }

  private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * d_ + j) * d_ + k;
    }
    int d_;
    std::vector<double> v_;
};

}  // namespace infogeo
