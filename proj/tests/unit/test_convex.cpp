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

#include <catch2/catch_amalgamated.hpp>

#include "infogeo/bregman.hpp"
#include "infogeo/legendre.hpp"
#include "infogeo/potentials.hpp"
#include "infogeo/quadform.hpp"
#include "oracles.hpp"

using namespace infogeo;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

/// Strip the analytic derivative attachments so the finite-difference paths
/// get exercised.
PotentialFunction value_only(const PotentialFunction& F) {
    return PotentialFunction(F.name() + "_raw", F.domain(),
                             [F](const Vec& t) { return F.value_unchecked(t); });
}

std::vector<PotentialFunction> builtins() {
    return {potentials::bernoulli(), potentials::poisson(), potentials::categorical(3),
            potentials::gaussian_meanvar(), potentials::exponential(),
            potentials::quadratic(2)};
}

}  // namespace

TEST_CASE("gradient map") {
    PotentialFunction quad = potentials::quadratic(2);
    REQUIRE(grad(quad, v2(1, 2)).isApprox(v2(1, 2), 1e-14));

    PotentialFunction pois = potentials::poisson();
    REQUIRE(grad(pois, v1(0))[0] == Catch::Approx(1.0).margin(1e-14));

    // Symmetric-coin slope against the plain central difference at h = 1e-5.
    PotentialFunction bern = potentials::bernoulli();
    double h = 1e-5;
    double fd = (std::log1p(std::exp(h)) - std::log1p(std::exp(-h))) / (2 * h);
    REQUIRE(grad(bern, v1(0))[0] == Catch::Approx(fd).margin(1e-10));
    REQUIRE(grad(bern, v1(0))[0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("gradient rejects boundary points") {
    PotentialFunction expf = potentials::exponential();
    REQUIRE_THROWS_AS(grad(expf, v1(0.0)), DomainError);
    REQUIRE_THROWS_AS(grad(expf, v1(1.0)), DomainError);
}

TEST_CASE("legendre conjugate on the self-dual quadratic") {
    PotentialFunction quad = potentials::quadratic(2);
    ConjugateResult c = legendre_conjugate(quad, v2(3, -1));
    REQUIRE(c.value == Catch::Approx(5.0).margin(1e-12));
    REQUIRE(c.theta.isApprox(v2(3, -1), 1e-10));
}

TEST_CASE("legendre conjugate against the grid-sup oracle") {
    PotentialFunction bern = potentials::bernoulli();
    auto bern_obj = [&](double th) {
        return th * 0.5 - std::log1p(std::exp(-std::abs(th))) - std::max(th, 0.0);
    };
    auto [bv, bx] = oracles::grid_max(bern_obj, -30.0, 30.0);
    ConjugateResult bc = legendre_conjugate(bern, v1(0.5));
    REQUIRE(bc.value == Catch::Approx(bv).margin(1e-8));
    REQUIRE(bc.value == Catch::Approx(-0.693147).margin(1e-6));
    REQUIRE(bc.theta[0] == Catch::Approx(bx).margin(1e-6));
    REQUIRE(bc.theta[0] == Catch::Approx(0.0).margin(1e-9));

    PotentialFunction pois = potentials::poisson();
    auto pois_obj = [](double th) { return th * 1.0 - std::exp(th); };
    auto [pv, px] = oracles::grid_max(pois_obj, -30.0, 30.0);
    ConjugateResult pc = legendre_conjugate(pois, v1(1.0));
    REQUIRE(pc.value == Catch::Approx(pv).margin(1e-8));
    REQUIRE(pc.value == Catch::Approx(-1.0).margin(1e-10));
    REQUIRE(pc.theta[0] == Catch::Approx(px).margin(1e-6));
}

TEST_CASE("legendre conjugate via Newton (no closed-form inverse)") {
    // Same solves on stripped-down potentials exercise the damped Newton path.
    PotentialFunction bern = value_only(potentials::bernoulli());
    ConjugateResult c = legendre_conjugate(bern, v1(0.5));
    REQUIRE(c.value == Catch::Approx(-std::log(2.0)).margin(1e-8));
    REQUIRE(c.residual <= 1e-10);

    // eta outside the gradient range of a box-restricted quadratic: the line
    // search collapses against the finite boundary.
    PotentialFunction boxed("boxed_quadratic",
                            Domain::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0)),
                            [](const Vec& t) { return 0.5 * t[0] * t[0]; });
    REQUIRE_THROWS_AS(legendre_conjugate(boxed, v1(2.0)), DomainError);
}

TEST_CASE("conjugate iteration budget") {
    PotentialFunction pois = value_only(potentials::poisson());
    REQUIRE_THROWS_AS(detail::conjugate_newton(pois, v1(1.0), v1(-2.0), 1e-30, 2),
                      ConvergenceError);
}

TEST_CASE("crouzeix residual") {
    PotentialFunction quad = potentials::quadratic(2);
    REQUIRE(crouzeix_residual(quad, v2(0.3, -0.7)) <= 1e-12);

    REQUIRE(crouzeix_residual(potentials::bernoulli(), v1(0.7)) <= 1e-5);
    REQUIRE(crouzeix_residual(potentials::poisson(), v1(1.3)) <= 1e-5);

    Rng rng(7);
    for (const auto& F : builtins()) {
        for (int i = 0; i < 10; ++i) {
            Vec th = F.domain().sample_interior(rng);
            REQUIRE(crouzeix_residual(F, th) <= 1e-5);
        }
    }
}

TEST_CASE("cubic tensor") {
    PotentialFunction quad = potentials::quadratic(2);
    REQUIRE(cubic_tensor(quad, v2(1, 2)).max_abs() == 0.0);

    Tensor3 tp = cubic_tensor(potentials::poisson(), v1(0));
    REQUIRE(tp(0, 0, 0) == Catch::Approx(1.0).margin(1e-12));

    // Finite-difference route on the raw coin cumulant; the slope of the
    // variance vanishes at the symmetric point.
    Tensor3 tb = cubic_tensor(value_only(potentials::bernoulli()), v1(0));
    REQUIRE(std::abs(tb(0, 0, 0)) <= 1e-3);

    // Total symmetry of the differenced tensor (two-dimensional case).
    Tensor3 tf = cubic_tensor(value_only(potentials::categorical(3)), v2(0.3, -0.4));
    REQUIRE(tf.symmetry_gap() <= 1e-8);

    // The differenced tensor tracks the analytic one.
    Tensor3 ta = cubic_tensor(potentials::categorical(3), v2(0.3, -0.4));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                REQUIRE(tf(i, j, k) == Catch::Approx(ta(i, j, k)).margin(2e-3));
}

TEST_CASE("mahalanobis distance") {
    QuadraticForm id(Mat::Identity(2, 2));
    REQUIRE(mahalanobis(id, v2(3, 4), v2(0, 0)) == Catch::Approx(5.0));

    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    REQUIRE(mahalanobis(QuadraticForm(d), v2(1, 0), v2(0, 0)) == Catch::Approx(2.0));

    Mat g(2, 2);
    g << 2, 1, 1, 2;
    // direct quadratic-form evaluation: (1,1) G (1,1)^T = 6
    Vec u = v2(1, 1), z = v2(0, 0);
    double direct = std::sqrt((u - z).dot(g * (u - z)));
    REQUIRE(direct == Catch::Approx(std::sqrt(6.0)).margin(1e-15));
    REQUIRE(mahalanobis(QuadraticForm(g), u, z) == Catch::Approx(direct));

    REQUIRE_THROWS_AS(mahalanobis(id, v1(1), v2(0, 0)), DimensionError);

    SECTION("triangle inequality on random triples") {
        Rng rng(11);
        Mat base(3, 3);
        base << 3, 1, 0, 1, 2, 0.5, 0, 0.5, 1.5;
        QuadraticForm q(base);
        for (int trial = 0; trial < 1000; ++trial) {
            Vec a(3), b(3), c(3);
            for (int i = 0; i < 3; ++i) {
                a[i] = rng.uniform(-5, 5);
                b[i] = rng.uniform(-5, 5);
                c[i] = rng.uniform(-5, 5);
            }
            REQUIRE(mahalanobis(q, a, c) <=
                    mahalanobis(q, a, b) + mahalanobis(q, b, c) + 1e-12);
        }
    }
}

TEST_CASE("potential function invariants") {
    Rng rng(3);
    for (const auto& F : builtins()) {
        for (int i = 0; i < 20; ++i) {
            Vec a = F.domain().sample_interior(rng);
            Vec b = F.domain().sample_interior(rng);
            double t = rng.uniform(0.05, 0.95);

            // midpoint convexity
            Vec mix = t * a + (1 - t) * b;
            REQUIRE(F.value(mix) <= t * F.value(a) + (1 - t) * F.value(b) + 1e-12);

            // Hessian positive-definite
            Eigen::SelfAdjointEigenSolver<Mat> es(F.hessian(a));
            REQUIRE(es.eigenvalues().minCoeff() > 0.0);

            // analytic gradient vs central differences, relative 1e-5
            Vec ga = F.gradient(a);
            Vec gf = fd::gradient([&](const Vec& x) { return F.value_unchecked(x); }, a);
            for (int c = 0; c < F.dim(); ++c)
                REQUIRE(ga[c] == Catch::Approx(gf[c]).margin(1e-5 * std::max(1.0, std::abs(ga[c]))));
        }
    }
}

TEST_CASE("dual coordinate round trip") {
    Rng rng(5);
    for (const auto& F : builtins()) {
        for (int i = 0; i < 20; ++i) {
            Vec th = F.domain().sample_interior(rng);
            Vec eta = theta_to_eta(F, th);
            Vec back = eta_to_theta(F, eta);
            REQUIRE((back - th).lpNorm<Eigen::Infinity>() <= 1e-8);
        }
    }
}

TEST_CASE("biconjugation closes on the original potential") {
    // F* realized purely numerically (value = conjugate solve), then
    // conjugated again at eta := theta. Sampled lightly here; the acceptance
    // suite covers the full sweep.
    struct Case {
        PotentialFunction F;
        Domain eta_dom;
    };
    std::vector<Case> cases;
    cases.push_back({potentials::bernoulli(), Domain::box(Vec::Zero(1), Vec::Ones(1))});
    cases.push_back({potentials::poisson(), Domain::positive(1)});

    Rng rng(13);
    for (const auto& c : cases) {
        const PotentialFunction& F = c.F;
        PotentialFunction Fstar(
            F.name() + "_conj", c.eta_dom,
            [F](const Vec& eta) { return legendre_conjugate(F, eta).value; });
        for (int i = 0; i < 10; ++i) {
            Vec th = F.domain().sample_interior(rng);
            double fstarstar = legendre_conjugate(Fstar, th).value;
            REQUIRE(std::abs(fstarstar - F.value(th)) <= 1e-8);
        }
    }
}
