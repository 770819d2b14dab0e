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

#include <algorithm>

#include "qqbf/compiler.hpp"
#include "test_util.hpp"

using namespace qqbf;
using qqbf::testing::random_complex;

namespace {

Coin z(Complex v) {
    return Coin::from_complex(v);
}

std::vector<Complex> sorted(std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

IdealResult run(const BlockCircuit &c, const Coin &x) {
    std::vector<Coin> data(c.n_data_inputs(), x);
    return evaluate_ideal(c, data);
}

Complex horner(const std::vector<Complex> &p, Complex x) {
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

}  // namespace

TEST_CASE("factor_polynomial examples") {
    std::vector<Complex> p1 = {-1.0, 0.0, 1.0};
    auto f1 = factor_polynomial(p1);
    CHECK(std::abs(f1.leading - 1.0) < 1e-12);
    auto r1 = sorted(f1.roots);
    REQUIRE(r1.size() == 2);
    CHECK(std::abs(r1[0] + 1.0) < 1e-10);
    CHECK(std::abs(r1[1] - 1.0) < 1e-10);

    std::vector<Complex> p2 = {6.0, -5.0, 1.0};
    auto r2 = sorted(factor_polynomial(p2).roots);
    REQUIRE(r2.size() == 2);
    CHECK(std::abs(r2[0] - 2.0) < 1e-10);
    CHECK(std::abs(r2[1] - 3.0) < 1e-10);

    std::vector<Complex> p3 = {5.0};
    auto f3 = factor_polynomial(p3);
    CHECK(f3.leading == Complex(5.0));
    CHECK(f3.roots.empty());

    // Trailing zeros are dropped; low-order zeros become exact zero roots.
    std::vector<Complex> p4 = {0.0, 0.0, 2.0, 0.0};
    auto f4 = factor_polynomial(p4);
    CHECK(f4.leading == Complex(2.0));
    REQUIRE(f4.roots.size() == 2);
    CHECK(f4.roots[0] == Complex(0.0));
    CHECK(f4.roots[1] == Complex(0.0));

    std::vector<Complex> zero = {0.0, 0.0};
    CHECK_THROWS_AS(factor_polynomial(zero), std::invalid_argument);
}

TEST_CASE("factoring round trip and residual bound") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int i = 0; i < 300; ++i) {
        std::vector<Complex> p(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto &c : p) {
            c = random_complex(rng);
        }
        auto f = factor_polynomial(p);
        REQUIRE(f.roots.size() == p.size() - 1);
        double scale = 0.0;
        for (auto c : p) {
            scale = std::max(scale, std::abs(c));
        }
        for (auto r : f.roots) {
            double bound = 1e-8 * scale * std::pow(1 + std::abs(r), static_cast<double>(p.size() - 1));
            CHECK(std::abs(horner(p, r)) <= bound);
        }
        auto back = expand_roots(f.leading, f.roots);
        REQUIRE(back.size() == p.size());
        for (std::size_t k = 0; k < p.size(); ++k) {
            CHECK(std::abs(back[k] - p[k]) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("repeated roots") {
    // (z - 1)^3 (z + 2)
    std::vector<Complex> roots = {1.0, 1.0, 1.0, -2.0};
    auto p = expand_roots(1.0, roots);
    auto f = factor_polynomial(p);
    REQUIRE(f.roots.size() == 4);
    auto back = expand_roots(f.leading, f.roots);
    for (std::size_t k = 0; k < p.size(); ++k) {
        CHECK(std::abs(back[k] - p[k]) <= 1e-8 * 8);
    }
}

TEST_CASE("expand and evaluate_rational") {
    FactoredRational f{2.0, {1.0}, {-1.0}};
    auto r = expand(f);
    REQUIRE(r.num.size() == 2);
    CHECK(std::abs(r.num[0] + 2.0) < 1e-15);
    CHECK(std::abs(r.num[1] - 2.0) < 1e-15);
    CHECK(std::abs(r.den[0] - 1.0) < 1e-15);
    CHECK(projectively_equal(*evaluate_rational(r, z(3.0)), z(1.0)));
    CHECK(evaluate_rational(r, z(-1.0))->is_infinite());
    CHECK(projectively_equal(*evaluate_rational(r, Coin::infinity()), z(2.0)));

    // 0/0 at z = 1.
    RationalFunction g{{-1.0, 1.0}, {-1.0, 1.0}};
    CHECK_FALSE(evaluate_rational(g, z(1.0)).has_value());
    RationalFunction bad{{1.0}, {0.0}};
    CHECK_THROWS(evaluate_rational(bad, z(1.0)));
}

TEST_CASE("compile examples") {
    auto id = compile_rational({{0.0, 1.0}, {1.0}});
    CHECK(id.op_count <= 4);
    CHECK(id.degree == 1);
    CHECK(id.bound == 4);
    CHECK(projectively_equal(*run(id.circuit, z(Complex(0.3, -2))).coin, z(Complex(0.3, -2))));

    auto mob = compile_rational({{-1.0, 1.0}, {1.0, 1.0}});
    CHECK(mob.op_count <= 4);
    CHECK(projectively_equal(*run(mob.circuit, z(3.0)).coin, z(0.5), 1e-10));

    auto sq = compile_rational({{-1.0, 0.0, 1.0}, {1.0}});
    CHECK(sq.op_count <= 8);
    CHECK(sq.bound == 8);
    CHECK(projectively_equal(*run(sq.circuit, z(2.0)).coin, z(3.0), 1e-10));
    CHECK(sq.photons_register <= 2 * sq.degree + 1);
    CHECK(sq.photons_data == 2);

    // Constant function.
    auto c = compile_rational({{3.0}, {2.0}});
    CHECK(c.op_count == 0);
    CHECK(projectively_equal(*run(c.circuit, z(7.0)).coin, z(1.5)));

    // 1/z.
    auto inv = compile_rational({{1.0}, {0.0, 1.0}});
    CHECK(inv.op_count == 0);
    CHECK(projectively_equal(*run(inv.circuit, z(4.0)).coin, z(0.25)));
}

TEST_CASE("compile degenerate and invalid input") {
    auto zero = compile_rational({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(zero.degenerate);
    CHECK_FALSE(zero.warnings.empty());
    CHECK(projectively_equal(*run(zero.circuit, z(2.0)).coin, z(0.0)));

    CHECK(compile_factored({0.0, {1.0}, {}}).degenerate);

    CHECK_THROWS_AS(compile_rational({{}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(compile_rational({{1.0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(compile_rational({{1.0}, {0.0}}), std::invalid_argument);
}

TEST_CASE("common roots cancel with a warning") {
    // (z - 1)(z + 2) / ((z - 1)(z - 3))
    auto num = expand_roots(1.0, std::vector<Complex>{1.0, -2.0});
    auto den = expand_roots(1.0, std::vector<Complex>{1.0, 3.0});
    auto r = compile_rational({num, den});
    CHECK_FALSE(r.warnings.empty());
    CHECK(r.degree == 1);
    CHECK(r.op_count <= 4);
    CHECK(projectively_equal(*run(r.circuit, z(1.0)).coin, z(-1.5), 1e-8));

    auto fr = compile_factored({2.0, {1.0, 5.0}, {1.0 + 1e-9}});
    CHECK(fr.warnings.size() == 1);
    CHECK(fr.degree == 1);
}

TEST_CASE("compiler correctness on random functions") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> deg(0, 5);
    for (int i = 0; i < 200; ++i) {
        std::size_t h = static_cast<std::size_t>(deg(rng));
        std::size_t k = static_cast<std::size_t>(deg(rng));
        RationalFunction f;
        f.num.resize(h + 1);
        f.den.resize(k + 1);
        for (auto &c : f.num) {
            c = random_complex(rng);
        }
        for (auto &c : f.den) {
            c = random_complex(rng);
        }
        auto rep = compile_rational(f);
        std::size_t n = std::max(h, k);
        CHECK(rep.degree == n);
        CHECK(rep.op_count <= 4 * n);
        CHECK(rep.photons_register <= 2 * n + 1);
        CHECK(rep.photons_data <= 2 * n);
        for (int t = 0; t < 5; ++t) {
            Complex x = random_complex(rng);
            if (std::abs(horner(f.den, x)) < 1e-3) {
                continue;
            }
            auto got = run(rep.circuit, z(x));
            REQUIRE(got.coin.has_value());
            CHECK(projectively_equal(*got.coin, z(horner(f.num, x) / horner(f.den, x)), 1e-8));
            CHECK(got.success_prob >= 0.0);
            CHECK(got.success_prob <= 1.0);
        }
    }
}

TEST_CASE("poles give infinity or indefinite") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 100; ++i) {
        std::vector<Complex> zeros = {random_complex(rng), random_complex(rng)};
        std::vector<Complex> poles = {random_complex(rng)};
        auto rep = compile_factored({random_complex(rng), zeros, poles});
        IdealResult res;
        CHECK_NOTHROW(res = run(rep.circuit, z(poles[0])));
        if (res.coin) {
            CHECK(projective_distance(*res.coin, Coin::infinity()) < 1e-6);
        }
    }
}

TEST_CASE("constant folding") {
    auto d = WireRef::data;
    auto r = WireRef::reg;
    auto n = WireRef::node;
    // ((z * 2) * 3) then invert: folds to one product with 1/6.
    BlockCircuit c(1, {z(2.0), z(3.0)},
                   {{BlockKind::Product, {d(0), r(0)}}, {BlockKind::Product, {n(0), r(1)}}, {BlockKind::Invert, {n(1)}}},
                   n(2));
    auto f = fold_constants(c);
    CHECK(f.op_count() == 1);
    CHECK(f.registers().size() == 1);
    CHECK(projectively_equal(*run(f, z(5.0)).coin, z(1.0 / 30.0)));
    CHECK(projectively_equal(*run(c, z(5.0)).coin, z(1.0 / 30.0)));

    // Factor 1 needs no product at all.
    BlockCircuit unit(1, {z(2.0), z(0.5)}, {{BlockKind::Product, {d(0), r(0)}}, {BlockKind::Product, {n(0), r(1)}}},
                      n(1));
    CHECK(fold_constants(unit).op_count() == 0);

    // Zero and infinite registers are kept as wires.
    BlockCircuit special(1, {Coin::infinity()}, {{BlockKind::Product, {d(0), r(0)}}}, n(0));
    CHECK(fold_constants(special).op_count() == 1);

    // Antiproduct folds into the sign.
    BlockCircuit anti(1, {z(2.0)}, {{BlockKind::Antiproduct, {d(0), r(0)}}}, n(0));
    CHECK(projectively_equal(*run(fold_constants(anti), z(1.5)).coin, z(-3.0)));

    // Random circuits: folding preserves the ideal coin.
    std::mt19937_64 rng(73);
    for (int i = 0; i < 100; ++i) {
        Complex a = random_complex(rng), b = random_complex(rng), x = random_complex(rng);
        BlockCircuit g(1, {z(a), z(b)},
                       {{BlockKind::Product, {d(0), r(0)}}, {BlockKind::ArithmeticMean, {n(0), r(1)}},
                        {BlockKind::Invert, {n(1)}}},
                       n(2));
        CHECK(projectively_equal(*run(fold_constants(g), z(x)).coin, *run(g, z(x)).coin, 1e-9));
    }
}

TEST_CASE("circuit_cost examples") {
    BlockCircuit prod(2, {}, {{BlockKind::Product, {WireRef::data(0), WireRef::data(1)}}}, WireRef::node(0));
    CHECK(circuit_cost(prod, z(0.0)) == doctest::Approx(0.5));
    CHECK(circuit_cost(program_linear(0.5, 0.5), z(1.0)) == doctest::Approx(0.03125));
    BlockCircuit pass(1, {}, {}, WireRef::data(0));
    CHECK(circuit_cost(pass, z(Complex(2, 1))) == 1.0);
}
