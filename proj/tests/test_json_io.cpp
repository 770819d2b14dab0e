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

#include "qqbf/json_io.hpp"
#include "test_util.hpp"

using namespace qqbf;

TEST_CASE("complex parsing") {
    CHECK(parse_complex("1+2i") == Complex(1, 2));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("3") == Complex(3, 0));
    CHECK(parse_complex(" -0.27-0.74i ") == Complex(-0.27, -0.74));
    CHECK(parse_complex("2.5e-3-4i") == Complex(2.5e-3, -4));
    CHECK(parse_complex("1-1j") == Complex(1, -1));
    CHECK(parse_complex("-2.5i") == Complex(0, -2.5));
    CHECK_THROWS_AS(parse_complex(""), ParseError);
    CHECK_THROWS_AS(parse_complex("abc"), ParseError);
    CHECK_THROWS_AS(parse_complex("1+"), ParseError);
    CHECK_THROWS_AS(parse_complex("1+2"), ParseError);

    auto list = parse_complex_list("-1, 0,1+i");
    REQUIRE(list.size() == 3);
    CHECK(list[0] == Complex(-1));
    CHECK(list[2] == Complex(1, 1));
    CHECK(parse_complex_list("").empty());
}

TEST_CASE("coin parsing and formatting") {
    CHECK(parse_coin("inf").is_infinite());
    CHECK(parse_coin("∞").is_infinite());
    CHECK(projectively_equal(parse_coin("0.5"), Coin::from_complex(0.5)));
    CHECK(projectively_equal(parse_coin(R"({"a": 1, "b": 2})"), Coin::from_complex(0.5)));
    CHECK(projectively_equal(parse_coin(R"({"a": [0, 1], "b": 0})"), Coin::infinity()));
    CHECK(projectively_equal(parse_coin(R"("1-i")"), Coin::from_complex({1, -1})));
    CHECK_THROWS_AS(parse_coin(R"({"a": 0, "b": 0})"), ParseError);
    CHECK_THROWS_AS(parse_coin("{bad"), ParseError);

    CHECK(format_complex({1, -2}) == "1-2i");
    CHECK(format_complex({0, 1}) == "1i");
    CHECK(format_complex({-0.0, 0.0}) == "0");
    CHECK(format_coin(Coin::infinity()) == "inf");
    CHECK(format_coin(Coin::from_complex(0.25)) == "0.25");

    std::mt19937_64 rng(101);
    for (int i = 0; i < 200; ++i) {
        Coin c = qqbf::testing::random_coin(rng);
        CHECK(projectively_equal(coin_from_json(coin_to_json(c)), c));
        CHECK(projectively_equal(parse_coin(format_coin(c, 17)), c));
        Complex x = qqbf::testing::random_complex(rng);
        CHECK(complex_from_json(complex_to_json(x)) == x);
    }
    CHECK(complex_from_json(Json::array({1.0, 2.0})) == Complex(1, 2));
    CHECK(complex_from_json(Json(4.0)) == Complex(4, 0));
    CHECK_THROWS_AS(complex_from_json(Json::array({1.0})), ParseError);
}

TEST_CASE("circuit JSON") {
    auto text = R"({"data_inputs": 1, "registers": [0.5, {"a": 1, "b": 1}],
                    "nodes": [{"op": "sum", "branch": "S", "in": [{"data": 0}, {"reg": 0}]},
                              {"op": "product", "branch": "plus", "in": [{"node": 0}, {"reg": 1}]},
                              {"op": "invert", "in": [{"node": 1}]}],
                    "output": 2})";
    BlockCircuit c = circuit_from_json(parse_json(text));
    CHECK(c.n_data_inputs() == 1);
    CHECK(c.nodes().size() == 3);
    CHECK(c.nodes()[0].kind == BlockKind::ArithmeticMean);
    CHECK(c.nodes()[2].kind == BlockKind::Invert);
    CHECK(c.output() == WireRef::node(2));

    BlockCircuit back = circuit_from_json(circuit_to_json(c));
    CHECK(back.nodes().size() == c.nodes().size());
    for (std::size_t i = 0; i < c.nodes().size(); ++i) {
        CHECK(back.nodes()[i].kind == c.nodes()[i].kind);
        CHECK(back.nodes()[i].inputs == c.nodes()[i].inputs);
    }
    const Coin data[] = {Coin::from_complex(3.0)};
    CHECK(projectively_equal(*evaluate_ideal(back, data).coin, *evaluate_ideal(c, data).coin));

    for (auto combo : {ChainCombo::SP, ChainCombo::MA}) {
        BlockCircuit k = concat3_circuit(combo);
        BlockCircuit r = circuit_from_json(circuit_to_json(k));
        CHECK(r.nodes()[0].kind == k.nodes()[0].kind);
        CHECK(r.nodes()[1].kind == k.nodes()[1].kind);
    }

    auto pass = circuit_from_json(parse_json(R"({"data_inputs": 1, "nodes": [], "output": {"data": 0}})"));
    CHECK(pass.output() == WireRef::data(0));

    CHECK_THROWS_AS(circuit_from_json(parse_json(R"({"data_inputs": 1, "nodes": [{"op": "frob", "in": []}],
                                                     "output": 0})")),
                    ParseError);
    CHECK_THROWS_AS(circuit_from_json(parse_json(R"({"data_inputs": 2,
        "nodes": [{"op": "product", "branch": "plus", "in": [{"data": 0}, {"data": 0}]}], "output": 0})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_json("{"), ParseError);
}

TEST_CASE("function JSON") {
    auto spec = function_from_json(parse_json(R"({"num": [-1, 0, 1], "den": ["1"]})"));
    REQUIRE(std::holds_alternative<RationalFunction>(spec));
    CHECK(std::get<RationalFunction>(spec).num.size() == 3);

    auto fac = function_from_json(parse_json(R"({"c0": 2, "zeros": ["1+i"], "poles": []})"));
    REQUIRE(std::holds_alternative<FactoredRational>(fac));
    CHECK(std::get<FactoredRational>(fac).zeros[0] == Complex(1, 1));

    RationalFunction f{{1.0, Complex(0, 2)}, {3.0}};
    auto g = std::get<RationalFunction>(function_from_json(function_to_json(f)));
    CHECK(g.num == f.num);
    CHECK(g.den == f.den);
    CHECK_THROWS_AS(function_from_json(parse_json(R"({"foo": 1})")), ParseError);
}

TEST_CASE("count JSON") {
    CountRecord c;
    c.shots = 10;
    c[PauliBasis::X] = std::array<std::uint64_t, 2>{3, 7};
    c[PauliBasis::Z] = std::array<std::uint64_t, 2>{10, 0};
    Json j = counts_to_json(c);
    CHECK(j["X"][0] == 3);
    CHECK(j["shots"] == 10);
    CHECK_FALSE(j.contains("Y"));
    CountRecord back = counts_from_json(j);
    CHECK(back.counts == c.counts);
    CHECK(back.shots == 10);
    CHECK_THROWS_AS(counts_from_json(parse_json(R"({"X": [1]})")), ParseError);
}

TEST_CASE("report JSON") {
    auto rep = compile_rational({{-1.0, 0.0, 1.0}, {1.0}});
    Json j = report_to_json(rep);
    CHECK(j["op_count"] == rep.op_count);
    CHECK(j["bound"] == 8);
    BlockCircuit c = circuit_from_json(j["circuit"]);
    CHECK(c.op_count() == rep.op_count);

    auto out = product_output(Coin::from_complex(1.0), Coin::from_complex(1.0), ProductBranch::Plus, Visibility(1.0));
    Json o = outcome_to_json(out);
    CHECK(o["success_prob"].get<double>() == doctest::Approx(0.25));
    CHECK(o["indefinite"] == false);
    CHECK(o["state"].size() == 2);
}
