// Copyright 2026 The qqbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "qqbf/blocks.hpp"
#include "test_util.hpp"

using namespace qqbf;
using qqbf::testing::random_coin;

namespace {

const Coin kZero = Coin::from_complex(0.0);
const Coin kOne = Coin::from_complex(1.0);
const Coin kInf = Coin::infinity();

Coin z(Complex v) {
    return Coin::from_complex(v);
}

// Reference values straight from the z-form formulas (finite inputs only).
double p_product_z(Complex z1, Complex z2) {
    return (std::norm(z1 * z2) + 1.0) / (2.0 * (1.0 + std::norm(z1)) * (1.0 + std::norm(z2)));
}
double p_sum_z(Complex z1, Complex z2) {
    return (std::norm(z1 + z2) / 4.0 + 1.0) / (4.0 * (1.0 + std::norm(z1)) * (1.0 + std::norm(z2)));
}

}  // namespace

TEST_CASE("invert") {
    CHECK(projectively_equal(invert(z(2.0)), z(0.5)));
    CHECK(projectively_equal(invert(kZero), kInf));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        Coin c = random_coin(rng);
        CHECK(projectively_equal(invert(invert(c)), c));
    }
}

TEST_CASE("product success probability") {
    CHECK(product_success_prob(kZero, kZero) == doctest::Approx(0.5));
    CHECK(product_success_prob(kZero, kInf) == 0.0);
    CHECK(product_success_prob(kInf, kZero) == 0.0);
    CHECK(product_success_prob(kOne, kOne) == doctest::Approx(0.25));
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        Complex z1 = qqbf::testing::random_complex(rng);
        Complex z2 = qqbf::testing::random_complex(rng);
        CHECK(product_success_prob(z(z1), z(z2)) == doctest::Approx(p_product_z(z1, z2)).epsilon(1e-12));
        CHECK(sum_success_prob(z(z1), z(z2), SumBranch::Arithmetic) == doctest::Approx(p_sum_z(z1, z2)).epsilon(1e-12));
    }
}

TEST_CASE("product output examples") {
    auto pure = product_output(kOne, kOne, ProductBranch::Plus, Visibility(1.0));
    CHECK(pure.success_prob == doctest::Approx(0.25));
    CHECK(max_abs_diff(*pure.state, coin_density(kOne)) < 1e-12);

    auto mixed = product_output(kOne, kOne, ProductBranch::Plus, Visibility(0.84));
    CHECK(std::abs(mixed.state->entries()[0] - 0.5) < 1e-12);
    CHECK(std::abs(mixed.state->entries()[1] - 0.42) < 1e-12);
    CHECK(std::abs(mixed.state->entries()[2] - 0.42) < 1e-12);
    CHECK(std::abs(mixed.state->entries()[3] - 0.5) < 1e-12);

    auto bad = product_output(kZero, kInf, ProductBranch::Plus, Visibility(0.9));
    CHECK(bad.indefinite());
    CHECK(bad.success_prob == 0.0);
    CHECK_FALSE(bad.ideal_coin.has_value());
    CHECK_THROWS_AS(bad.require_state(), IndefiniteError);
    CHECK_THROWS_AS(bad.require_coin(), IndefiniteError);
}

TEST_CASE("sum success probability examples") {
    CHECK(sum_success_prob(kZero, kZero, SumBranch::Arithmetic) == doctest::Approx(0.25));
    CHECK(sum_success_prob(kZero, kZero, SumBranch::Harmonic) == 0.0);
    CHECK(sum_success_prob(kInf, kInf, SumBranch::Harmonic) == doctest::Approx(0.25));
    CHECK(sum_success_prob(kInf, kInf, SumBranch::Arithmetic) == 0.0);
}

TEST_CASE("sum output examples") {
    auto cancel = sum_output(kOne, z(-1.0), SumBranch::Arithmetic, Visibility(1.0));
    CHECK(max_abs_diff(*cancel.state, coin_density(kZero)) < 1e-12);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        Coin c = random_coin(rng, 0.0);
        for (double v : {0.3, 0.84, 1.0}) {
            auto out = sum_output(c, c, SumBranch::Harmonic, Visibility(v));
            CHECK(projectively_equal(*out.ideal_coin, c));
            if (v == 1.0) {
                CHECK(max_abs_diff(*out.state, coin_density(c)) < 1e-12);
            }
        }
    }

    // z1 = z2 = 1, V = 0.84: N [[4 - 2*0.16, 2*1.84], [2*1.84, 2*1.84]].
    auto m = sum_output(kOne, kOne, SumBranch::Arithmetic, Visibility(0.84));
    double tr = 4 - 2 * 0.16 + 2 * 1.84;
    CHECK(std::abs(m.state->entries()[0] - (4 - 2 * 0.16) / tr) < 1e-12);
    CHECK(std::abs(m.state->entries()[1] - 2 * 1.84 / tr) < 1e-12);
    CHECK(std::abs(m.state->entries()[3] - 2 * 1.84 / tr) < 1e-12);

    CHECK(sum_output(kInf, kInf, SumBranch::Arithmetic, Visibility(0.5)).indefinite());
    CHECK(sum_output(kZero, kZero, SumBranch::Harmonic, Visibility(0.5)).indefinite());
}

TEST_CASE("disc bounds") {
    CHECK(prob_bound_product(0.0) == 0.0);
    CHECK(prob_bound_product(0.1) == doctest::Approx(0.005));
    CHECK(prob_bound_sum(0.1) == doctest::Approx(0.01 / 16 * 3.04));
    CHECK(prob_bound_sum(0.1) == doctest::Approx(0.0019).epsilon(0.001));
    CHECK_THROWS_AS(prob_bound_product(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(prob_bound_sum(-1.0), std::invalid_argument);
}

TEST_CASE("block properties over random inputs") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        Coin c1 = random_coin(rng);
        Coin c2 = random_coin(rng);
        double v = qqbf::testing::random_visibility(rng);

        // Branch symmetry.
        CHECK(std::abs(product_success_prob(c1, c2) - product_success_prob(c2, c1)) < 1e-15);
        for (auto br : {SumBranch::Arithmetic, SumBranch::Harmonic}) {
            CHECK(std::abs(sum_success_prob(c1, c2, br) - sum_success_prob(c2, c1, br)) < 1e-15);
        }

        // Antiproduct = product with negated a.
        auto plus = ideal_product(c1, c2, ProductBranch::Plus);
        auto minus = ideal_product(c1, c2, ProductBranch::Minus);
        REQUIRE(plus.has_value() == minus.has_value());
        if (plus) {
            CHECK(projectively_equal(*minus, Coin(-plus->a(), plus->b())));
        }

        // V = 1 purity and agreement with the ideal coin.
        for (auto out : {product_output(c1, c2, ProductBranch::Plus, Visibility(1.0)),
                         product_output(c1, c2, ProductBranch::Minus, Visibility(1.0)),
                         sum_output(c1, c2, SumBranch::Arithmetic, Visibility(1.0)),
                         sum_output(c1, c2, SumBranch::Harmonic, Visibility(1.0))}) {
            if (!out.indefinite()) {
                CHECK(out.state->eigenvalues()[1] >= 1 - 1e-12);
                CHECK(fidelity(*out.state, coin_density(*out.ideal_coin)) >= 1 - 1e-12);
            }
        }

        // Product decoherence: diagonal fixed, off-diagonal linear in V.
        auto p1 = product_output(c1, c2, ProductBranch::Plus, Visibility(1.0));
        auto pv = product_output(c1, c2, ProductBranch::Plus, Visibility(v));
        if (!p1.indefinite()) {
            CHECK(std::abs(pv.state->entries()[0] - p1.state->entries()[0]) < 1e-12);
            CHECK(std::abs(pv.state->entries()[1] - v * p1.state->entries()[1]) < 1e-12);
            CHECK(std::abs(pv.success_prob - p1.success_prob) < 1e-15);
        }

        // V-aware sum probability reduces to the ideal formula at V = 1.
        for (auto br : {SumBranch::Arithmetic, SumBranch::Harmonic}) {
            CHECK(std::abs(sum_output(c1, c2, br, Visibility(1.0)).success_prob - sum_success_prob(c1, c2, br)) < 1e-15);
        }

        // Harmonic mean = inverted arithmetic mean of the inverses.
        auto h = ideal_sum(c1, c2, SumBranch::Harmonic);
        auto s = ideal_sum(invert(c1), invert(c2), SumBranch::Arithmetic);
        REQUIRE(h.has_value() == s.has_value());
        if (h) {
            CHECK(projectively_equal(*h, invert(*s)));
        }

        // Indefinite iff the success probability vanishes.
        CHECK(product_output(c1, c2, ProductBranch::Plus, Visibility(v)).indefinite() ==
              (product_success_prob(c1, c2) == 0.0));
    }
}

TEST_CASE("critical point bounds") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double two_pi = 2 * std::numbers::pi;
    for (double r : {0.01, 0.1, 0.3}) {
        for (int i = 0; i < 2000; ++i) {
            double rho = r * std::sqrt(u(rng));
            double t = 0.5 * std::numbers::pi * u(rng);
            double x = rho * std::cos(t);
            double y = rho * std::sin(t);
            Complex e1 = std::polar(1.0, two_pi * u(rng));
            Complex e2 = std::polar(1.0, two_pi * u(rng));
            // Product near (0, inf): x = |z1|, y = 1/|z2|.
            CHECK(product_success_prob(Coin(x * e1, 1.0), Coin(e2, y)) <= prob_bound_product(r) + 1e-15);
            // Arithmetic mean near (inf, inf): x = 1/|z1|, y = 1/|z2|.
            CHECK(sum_success_prob(Coin(e1, x), Coin(e2, y), SumBranch::Arithmetic) <= prob_bound_sum(r) + 1e-15);
            // Harmonic mean near (0, 0).
            CHECK(sum_success_prob(Coin(x * e1, 1.0), Coin(y * e2, 1.0), SumBranch::Harmonic) <=
                  prob_bound_sum(r) + 1e-15);
        }
    }
}
