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
#include "infogeo/expfam.hpp"
#include "infogeo/fdivergence.hpp"
#include "infogeo/fgenerator.hpp"
#include "infogeo/legendre.hpp"
#include "infogeo/potentials.hpp"
#include "oracles.hpp"

using namespace infogeo;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }
Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v4(double a, double b, double c, double d) {
    return (Vec(4) << a, b, c, d).finished();
}

double gauss_pdf(double x, double mu, double sigma) {
    double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

std::vector<FGenerator> common_generators() {
    return {generators::kl(), generators::reverse_kl(), generators::hellinger(),
            generators::total_variation(), generators::jensen_shannon(),
            generators::alpha_divergence(-0.5), generators::alpha_divergence(0.5),
            generators::alpha_divergence(2.0)};
}

Vec random_simplex(Rng& rng, int d) {
    Vec e(d);
    for (int i = 0; i < d; ++i) e[i] = rng.exponential(1.0) + 1e-3;
    return e / e.sum();
}

}  // namespace

TEST_CASE("bregman divergence") {
    PotentialFunction quad = potentials::quadratic(2);
    REQUIRE(bregman(quad, v2(1, 2), v2(0, 0)) == Catch::Approx(2.5).margin(1e-14));

    // Separable negative entropy reduces to the two-point relative entropy
    // when the arguments are normalized.
    PotentialFunction ent = potentials::entropy_sum(2);
    Vec p = v2(0.5, 0.5), q = v2(0.25, 0.75);
    double oracle = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
    REQUIRE(oracle == Catch::Approx(0.143841).margin(1e-6));
    REQUIRE(bregman(ent, p, q) == Catch::Approx(oracle).margin(1e-12));

    REQUIRE(bregman(ent, q, q) == 0.0);
    REQUIRE(bregman(quad, v2(0.3, -1), v2(0.3, -1)) == 0.0);

    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        Vec a = ent.domain().sample_interior(rng);
        Vec b = ent.domain().sample_interior(rng);
        REQUIRE(bregman(ent, a, b) >= 0.0);
    }
}

TEST_CASE("canonical divergence") {
    PotentialFunction quad = potentials::quadratic(2);
    REQUIRE(canonical(quad, v2(1, 0), v2(1, 0)) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(canonical(quad, v2(1, 0), v2(0, 1)) == Catch::Approx(1.0).margin(1e-12));

    PotentialFunction bern = potentials::bernoulli();
    REQUIRE(canonical(bern, v1(0), v1(0.5)) == Catch::Approx(0.0).margin(1e-12));

    // canonical == bregman through the dual point, and Young-Fenchel holds.
    Rng rng(4);
    for (int i = 0; i < 25; ++i) {
        Vec th = bern.domain().sample_interior(rng);
        Vec etap = v1(rng.uniform(0.05, 0.95));
        double c = canonical(bern, th, etap);
        REQUIRE(c >= -1e-12);
        REQUIRE(c == Catch::Approx(bregman(bern, th, eta_to_theta(bern, etap))).margin(1e-8));
    }
}

TEST_CASE("skew jensen divergence") {
    PotentialFunction quad = potentials::quadratic(2);
    // quadratic expansion oracle: J = a(1-a) |t1 - t2|^2 / 2
    double direct = 0.5 * 0.5 * 0.5 * 4.0;
    REQUIRE(skew_jensen(quad, 0.5, v2(2, 0), v2(0, 0)) ==
            Catch::Approx(direct).margin(1e-14));

    PotentialFunction bern = potentials::bernoulli();
    REQUIRE(skew_jensen(bern, 0.3, v1(0.8), v1(0.8)) == Catch::Approx(0.0).margin(1e-15));

    REQUIRE_THROWS_AS(skew_jensen(quad, 0.0, v2(1, 0), v2(0, 0)), RangeError);
    REQUIRE_THROWS_AS(skew_jensen(quad, 1.0, v2(1, 0), v2(0, 0)), RangeError);

    // small-alpha limit: the Jensen gap divided by its weight tends to the
    // divergence from the weighted point, J(a)/a -> B(theta1 : theta2)
    // (J(0) = 0 and dJ/da|0 = F(t1) - F(t2) - (t1 - t2).grad F(t2)).
    Vec t1 = v1(1.2), t2 = v1(-0.4);
    double lim = skew_jensen(bern, 1e-4, t1, t2) / 1e-4;
    double target = bregman(bern, t1, t2);
    REQUIRE(lim == Catch::Approx(target).epsilon(1e-3));
}

TEST_CASE("discrete f-divergence") {
    Vec p = v2(0.5, 0.5), q = v2(0.25, 0.75);
    double kl_oracle = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
    REQUIRE(f_divergence(generators::kl(), p, q) ==
            Catch::Approx(kl_oracle).margin(1e-14));
    REQUIRE(f_divergence(generators::total_variation(), p, q) ==
            Catch::Approx(0.25).margin(1e-15));
    for (const auto& gen : common_generators())
        REQUIRE(f_divergence(gen, q, q) == Catch::Approx(0.0).margin(1e-15));

    REQUIRE_THROWS_AS(
        f_divergence(generators::kl(), DiscreteDistribution(p),
                     DiscreteDistribution((Vec(3) << 0.2, 0.3, 0.5).finished())),
        DimensionError);

    SECTION("zero-bin conventions") {
        Vec pz = v2(1.0, 0.0), qz = v2(0.5, 0.5);
        // reference bin empty: finite for tv, +inf for kl
        REQUIRE(f_divergence(generators::total_variation(),
                             DiscreteDistribution(qz), DiscreteDistribution(pz)) ==
                Catch::Approx(0.5));
        REQUIRE(std::isinf(f_divergence(generators::kl(), DiscreteDistribution(qz),
                                        DiscreteDistribution(pz))));
        // first-argument bin empty: kl has zero slope at infinity, reverse
        // does not
        REQUIRE(f_divergence(generators::kl(), DiscreteDistribution(pz),
                             DiscreteDistribution(qz)) ==
                Catch::Approx(std::log(2.0)).margin(1e-12));
        REQUIRE_THROWS_AS(f_divergence(generators::reverse_kl(),
                                       DiscreteDistribution(pz),
                                       DiscreteDistribution(qz)),
                          SupportError);
    }
}

TEST_CASE("continuous f-divergence") {
    auto p = [](double x) { return gauss_pdf(x, 0, 1); };
    auto q = [](double x) { return gauss_pdf(x, 1, 1); };
    Interval line = Interval::real_line();

    REQUIRE(f_divergence_continuous(generators::kl(), p, p, line) ==
            Catch::Approx(0.0).margin(1e-9));
    REQUIRE(f_divergence_continuous(generators::kl(), p, q, line) ==
            Catch::Approx(0.5).margin(1e-8));
    // squared-Hellinger closed form from the Gaussian overlap integral
    double hell = 2.0 * (1.0 - std::exp(-1.0 / 8.0));
    REQUIRE(f_divergence_continuous(generators::hellinger(), p, q, line) ==
            Catch::Approx(hell).margin(1e-8));
}

TEST_CASE("generator standardization") {
    FGenerator rkl = standardize(generators::reverse_kl());
    auto g = rkl.f;
    // g(u) = u log u - (u - 1)
    REQUIRE(g(2.0) == Catch::Approx(2 * std::log(2.0) - 1.0).margin(1e-14));
    REQUIRE(fd::deriv1(g, 1.0) == Catch::Approx(0.0).margin(1e-8));
    REQUIRE(fd::deriv2(g, 1.0) == Catch::Approx(1.0).margin(1e-6));

    FGenerator sq = standardize(make_generator(
        [](double u) { return (u - 1.0) * (u - 1.0); }, "pearson_like"));
    REQUIRE(sq.f(3.0) == Catch::Approx(2.0).margin(1e-10));  // (u-1)^2 / 2

    FGenerator skl = standardize(generators::kl());
    REQUIRE(skl.f(2.0) == Catch::Approx(-std::log(2.0) + 1.0).margin(1e-14));
    REQUIRE(skl.is_standard());

    REQUIRE_THROWS_AS(standardize(generators::total_variation()),
                      DegenerateGeneratorError);

    // the linear shift leaves the divergence unchanged; the scale divides it
    Rng rng(9);
    FGenerator raw = generators::reverse_kl();
    FGenerator std_rkl = standardize(raw);
    for (int i = 0; i < 20; ++i) {
        Vec p = random_simplex(rng, 4), q = random_simplex(rng, 4);
        REQUIRE(f_divergence(std_rkl, p, q) ==
                Catch::Approx(f_divergence(raw, p, q) / raw.fsecond1).margin(1e-12));
    }
}

TEST_CASE("diamond conjugate") {
    FGenerator dkl = diamond(generators::kl());
    for (double u : {0.25, 0.5, 2.0, 7.0})
        REQUIRE(dkl.f(u) == Catch::Approx(u * std::log(u)).margin(1e-12));

    FGenerator dtv = diamond(generators::total_variation());
    FGenerator dhel = diamond(generators::hellinger());
    for (double u = 0.1; u < 10.0; u += 0.37) {
        REQUIRE(dtv.f(u) ==
                Catch::Approx(generators::total_variation().f(u)).margin(1e-12));
        REQUIRE(dhel.f(u) == Catch::Approx(generators::hellinger().f(u)).margin(1e-12));
    }

    SECTION("reference duality is exact") {
        Rng rng(17);
        for (const auto& gen : {generators::kl(), generators::hellinger(),
                                generators::jensen_shannon(),
                                generators::alpha_divergence(0.5)}) {
            FGenerator dg = diamond(gen);
            for (int i = 0; i < 50; ++i) {
                Vec p = random_simplex(rng, 5), q = random_simplex(rng, 5);
                REQUIRE(f_divergence(dg, p, q) ==
                        Catch::Approx(f_divergence(gen, q, p)).margin(1e-12));
            }
        }
    }

    SECTION("diamond preserves standardness") {
        FGenerator s = standardize(generators::jensen_shannon());
        FGenerator ds = diamond(s);
        REQUIRE(ds.is_standard());
        REQUIRE(fd::deriv1(ds.f, 1.0) == Catch::Approx(0.0).margin(1e-8));
        REQUIRE(fd::deriv2(ds.f, 1.0) == Catch::Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("alpha of generator") {
    // finite-difference third derivatives via make_generator
    FGenerator skl = standardize(make_generator(
        [](double u) { return -std::log(u); }, "raw_kl"));
    REQUIRE(alpha_of_generator(skl) == Catch::Approx(-1.0).margin(1e-3));

    FGenerator srkl = standardize(make_generator(
        [](double u) { return u * std::log(u); }, "raw_rkl"));
    REQUIRE(alpha_of_generator(srkl) == Catch::Approx(1.0).margin(1e-3));

    FGenerator shel = standardize(make_generator(
        [](double u) { return 2.0 * (1.0 - std::sqrt(u)); }, "raw_sqrt"));
    REQUIRE(alpha_of_generator(shel) == Catch::Approx(0.0).margin(1e-3));
    // agrees with the alpha-family generator at alpha = 0 after standardization
    FGenerator fam0 = standardize(generators::alpha_divergence(0.0));
    REQUIRE(alpha_of_generator(fam0) == Catch::Approx(0.0).margin(1e-12));

    // analytic metadata path
    REQUIRE(alpha_of_generator(standardize(generators::kl())) == Catch::Approx(-1.0));
    REQUIRE(alpha_of_generator(standardize(generators::reverse_kl())) ==
            Catch::Approx(1.0));
}

TEST_CASE("alpha family dispatches to the KL pair at the endpoints") {
    REQUIRE(generators::alpha_divergence(1.0).name == "kl");
    REQUIRE(generators::alpha_divergence(-1.0).name == "reverse_kl");
}

TEST_CASE("coarse graining") {
    DiscreteDistribution p(v4(0.1, 0.2, 0.3, 0.4));
    DiscreteDistribution same = coarse_grain(p, {{0}, {1}, {2}, {3}});
    REQUIRE(same.probs().isApprox(p.probs()));

    DiscreteDistribution two = coarse_grain(p, {{0, 1}, {2, 3}});
    REQUIRE(two[0] == Catch::Approx(0.3));
    REQUIRE(two[1] == Catch::Approx(0.7));

    REQUIRE_THROWS_AS(coarse_grain(p, {{0, 1}, {1, 2, 3}}), PartitionError);
    REQUIRE_THROWS_AS(coarse_grain(p, {{0, 1}, {3}}), PartitionError);

    SECTION("merging bins never increases the divergence") {
        DiscreteDistribution q(v4(0.4, 0.3, 0.2, 0.1));
        double full = f_divergence(generators::kl(), p, q);
        for (const auto& part : oracles::partitions(4, 2, 3)) {
            double coarse = f_divergence(generators::kl(), coarse_grain(p, part),
                                         coarse_grain(q, part));
            REQUIRE(coarse <= full + 1e-12);
        }
    }

    SECTION("monotonicity on random triples") {
        Rng rng(23);
        auto parts = oracles::partitions(5, 2, 4);
        std::vector<FGenerator> gens = {generators::kl(), generators::total_variation(),
                                        generators::hellinger(),
                                        generators::jensen_shannon(),
                                        generators::alpha_divergence(-0.5),
                                        generators::alpha_divergence(0.5),
                                        generators::alpha_divergence(2.0)};
        for (int trial = 0; trial < 1500; ++trial) {
            Vec pv = random_simplex(rng, 5), qv = random_simplex(rng, 5);
            const auto& part = parts[rng.raw() % parts.size()];
            const auto& gen = gens[trial % gens.size()];
            DiscreteDistribution P(pv), Q(qv);
            double fine = f_divergence(gen, P, Q);
            double coarse = f_divergence(gen, coarse_grain(P, part), coarse_grain(Q, part));
            REQUIRE(coarse <= fine + 1e-12);
        }
    }
}

TEST_CASE("divergence axioms at the diagonal") {
    // Parameter divergences built from the machinery: Bregman on built-in
    // potentials and an f-divergence in a simplex chart.
    struct Probe {
        std::string name;
        std::function<double(const Vec&, const Vec&)> D;
        Domain domain;
    };
    PotentialFunction bern = potentials::bernoulli();
    PotentialFunction cat = potentials::categorical(3);
    std::vector<Probe> probes;
    probes.push_back({"bregman_bernoulli",
                      [bern](const Vec& a, const Vec& b) { return bregman(bern, a, b); },
                      bern.domain()});
    probes.push_back({"bregman_categorical",
                      [cat](const Vec& a, const Vec& b) { return bregman(cat, a, b); },
                      cat.domain()});
    auto chart = [](const Vec& th) {
        Vec p(3);
        p[0] = th[0];
        p[1] = th[1];
        p[2] = 1.0 - th[0] - th[1];
        return p;
    };
    FGenerator kl = generators::kl();
    probes.push_back({"kl_simplex_chart",
                      [chart, kl](const Vec& a, const Vec& b) {
                          return f_divergence(kl, chart(a), chart(b));
                      },
                      Domain::simplex_interior(2, 1e-3)});

    Rng rng(31);
    for (const auto& probe : probes) {
        for (int i = 0; i < 15; ++i) {
            Vec a = probe.domain.sample_interior(rng);
            Vec b = probe.domain.sample_interior(rng);
            REQUIRE(probe.D(a, b) >= 0.0);
            REQUIRE(probe.D(a, a) == Catch::Approx(0.0).margin(1e-13));
            if ((a - b).lpNorm<Eigen::Infinity>() > 1e-6) REQUIRE(probe.D(a, b) > 0.0);

            // first derivatives vanish at the diagonal
            Vec g1 = fd::gradient([&](const Vec& x) { return probe.D(x, a); }, a);
            Vec g2 = fd::gradient([&](const Vec& x) { return probe.D(a, x); }, a);
            REQUIRE(g1.lpNorm<Eigen::Infinity>() <= 1e-5);
            REQUIRE(g2.lpNorm<Eigen::Infinity>() <= 1e-5);

            // the diagonal is a strict minimum in the second slot: its
            // Hessian there is positive-definite
            Mat h = fd::hessian([&](const Vec& x) { return probe.D(a, x); }, a);
            Eigen::SelfAdjointEigenSolver<Mat> es(h);
            REQUIRE(es.eigenvalues().minCoeff() > 0.0);
        }
    }
}

TEST_CASE("dual Bregman identity through the numeric conjugate") {
    PotentialFunction bern = potentials::bernoulli();
    PotentialFunction conj(
        "bernoulli_conj", Domain::box(Vec::Zero(1), Vec::Ones(1)),
        [bern](const Vec& eta) { return legendre_conjugate(bern, eta).value; });
    Rng rng(41);
    for (int i = 0; i < 15; ++i) {
        Vec t1 = bern.domain().sample_interior(rng);
        Vec t2 = bern.domain().sample_interior(rng);
        Vec e1 = theta_to_eta(bern, t1), e2 = theta_to_eta(bern, t2);
        REQUIRE(bregman(bern, t2, t1) ==
                Catch::Approx(bregman(conj, e1, e2)).margin(1e-6));
    }
}

TEST_CASE("infinitesimal expansion recovers the information metric") {
    // Two-outcome family at theta = 0.4: the f-divergence between nearby
    // members shrinks to (1/2) g dtheta^2 with a cubic remainder.
    PotentialFunction bern = potentials::bernoulli();
    double theta = 0.4;
    double g = bern.hessian(v1(theta))(0, 0);
    auto member = [](double th) {
        double p = potentials::sigmoid(th);
        return v2(1.0 - p, p);
    };
    for (const auto& gen :
         {standardize(generators::kl()), standardize(generators::reverse_kl()),
          standardize(generators::jensen_shannon())}) {
        auto residual = [&](double dt) {
            double val = f_divergence(gen, member(theta), member(theta + dt));
            return std::abs(val - 0.5 * g * dt * dt);
        };
        double r1 = residual(1e-2);
        double r2 = residual(5e-3);
        REQUIRE(r1 / r2 >= 6.0);
    }
}

TEST_CASE("sqrt of the JS-type divergence is metric") {
    Rng rng(47);
    FGenerator js = generators::jensen_shannon();
    for (int trial = 0; trial < 10000; ++trial) {
        Vec a = random_simplex(rng, 4), b = random_simplex(rng, 4),
            c = random_simplex(rng, 4);
        double dab = std::sqrt(f_divergence(js, a, b));
        double dbc = std::sqrt(f_divergence(js, b, c));
        double dac = std::sqrt(f_divergence(js, a, c));
        REQUIRE(dac <= dab + dbc + 1e-12);
    }
}

TEST_CASE("generator invariants") {
    for (const auto& gen : common_generators()) {
        REQUIRE(std::abs(gen.f(1.0)) <= 1e-12);
        // midpoint convexity on (0, 10]
        for (double u = 0.05; u < 9.9; u += 0.34) {
            double v = u + 0.1;
            REQUIRE(gen.f(0.5 * (u + v)) <= 0.5 * gen.f(u) + 0.5 * gen.f(v) + 1e-10);
        }
    }
    for (const auto& gen :
         {standardize(generators::kl()), standardize(generators::hellinger()),
          generators::alpha_divergence(0.5)}) {
        if (!gen.is_standard()) continue;
        REQUIRE(fd::deriv1(gen.f, 1.0) == Catch::Approx(0.0).margin(1e-8));
        REQUIRE(fd::deriv2(gen.f, 1.0) == Catch::Approx(1.0).margin(1e-6));
    }
}
