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

#include "qqbf/json_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qqbf {

namespace {

std::string strip(std::string_view text) {
    std::string out;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            out.push_back(ch);
        }
    }
    return out;
}

double parse_real(const std::string &s, std::string_view whole) {
    if (s.empty()) {
        throw ParseError("cannot parse complex number '" + std::string(whole) + "'");
    }
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ParseError("cannot parse complex number '" + std::string(whole) + "'");
    }
    return v;
}

bool is_infinity_word(const std::string &s) {
    return s == "inf" || s == "Inf" || s == "INF" || s == "infinity" || s == "Infinity" || s == "∞";
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string s = strip(text);
    if (s.empty()) {
        throw ParseError("empty complex number");
    }
    // Split into signed terms; a sign right after an exponent marker stays.
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        bool sign = ch == '+' || ch == '-';
        bool exponent = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E');
        if (sign && !cur.empty() && !exponent) {
            terms.push_back(cur);
            cur.clear();
        }
        cur.push_back(ch);
    }
    terms.push_back(cur);
    if (terms.size() > 2) {
        throw ParseError("cannot parse complex number '" + std::string(text) + "'");
    }
    Complex z{};
    bool seen_re = false;
    bool seen_im = false;
    for (const auto &t : terms) {
        char last = t.back();
        if (last == 'i' || last == 'j') {
            std::string coeff = t.substr(0, t.size() - 1);
            if (coeff.empty() || coeff == "+") {
                coeff = "1";
            } else if (coeff == "-") {
                coeff = "-1";
            }
            if (seen_im) {
                throw ParseError("cannot parse complex number '" + std::string(text) + "'");
            }
            seen_im = true;
            z += Complex(0, parse_real(coeff, text));
        } else {
            if (seen_re) {
                throw ParseError("cannot parse complex number '" + std::string(text) + "'");
            }
            seen_re = true;
            z += Complex(parse_real(t, text), 0);
        }
    }
    return z;
}

std::vector<Complex> parse_complex_list(std::string_view text) {
    std::vector<Complex> out;
    std::string s = strip(text);
    if (s.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t comma = s.find(',', start);
        out.push_back(parse_complex(std::string_view(s).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

Coin parse_coin(std::string_view text) {
    std::string s = strip(text);
    if (is_infinity_word(s)) {
        return Coin::infinity();
    }
    if (!s.empty() && (s[0] == '{' || s[0] == '[' || s[0] == '"')) {
        return coin_from_json(parse_json(s));
    }
    return Coin::from_complex(parse_complex(s));
}

std::string format_complex(Complex z, int precision) {
    auto clean = [](double x) { return x == 0.0 ? 0.0 : x; };  // drop -0
    std::ostringstream os;
    os.precision(precision);
    double re = clean(z.real());
    double im = clean(z.imag());
    if (im == 0.0) {
        os << re;
    } else if (re == 0.0) {
        os << im << "i";
    } else {
        os << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
    }
    return os.str();
}

std::string format_coin(const Coin &c, int precision) {
    auto v = c.value();
    return v ? format_complex(*v, precision) : "inf";
}

Json complex_to_json(Complex z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_string()) {
        return parse_complex(j.get<std::string>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object() && j.contains("re")) {
        double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
        return {j.at("re").get<double>(), im};
    }
    throw ParseError("expected a complex number, got " + j.dump());
}

Json coin_to_json(const Coin &c) {
    Coin u = c.normalized();
    Json out{{"a", complex_to_json(u.a())}, {"b", complex_to_json(u.b())}};
    auto v = u.value();
    out["z"] = v ? complex_to_json(*v) : Json("inf");
    return out;
}

Coin coin_from_json(const Json &j) {
    try {
        if (j.is_string()) {
            std::string s = strip(j.get<std::string>());
            if (is_infinity_word(s)) {
                return Coin::infinity();
            }
            return Coin::from_complex(parse_complex(s));
        }
        if (j.is_object() && j.contains("a") && j.contains("b")) {
            return Coin(complex_from_json(j.at("a")), complex_from_json(j.at("b")));
        }
        if (j.is_object() && j.contains("z")) {
            return coin_from_json(j.at("z"));
        }
        return Coin::from_complex(complex_from_json(j));
    } catch (const ParseError &) {
        throw;
    } catch (const Json::exception &e) {
        throw ParseError(std::string("bad coin: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw ParseError(std::string("bad coin: ") + e.what());
    }
}

namespace {

Json wire_to_json(const WireRef &w) {
    switch (w.source) {
        case WireRef::Source::Data:
            return Json{{"data", w.index}};
        case WireRef::Source::Register:
            return Json{{"reg", w.index}};
        case WireRef::Source::Node:
            break;
    }
    return Json{{"node", w.index}};
}

WireRef wire_from_json(const Json &j) {
    if (j.is_number_unsigned()) {
        return WireRef::node(j.get<std::size_t>());
    }
    if (j.is_object() && j.size() == 1) {
        if (j.contains("data")) {
            return WireRef::data(j.at("data").get<std::size_t>());
        }
        if (j.contains("reg")) {
            return WireRef::reg(j.at("reg").get<std::size_t>());
        }
        if (j.contains("node")) {
            return WireRef::node(j.at("node").get<std::size_t>());
        }
    }
    throw ParseError("bad wire reference " + j.dump());
}

std::pair<std::string, std::string> op_fields(BlockKind kind) {
    switch (kind) {
        case BlockKind::Invert:
            return {"invert", ""};
        case BlockKind::Product:
            return {"product", "plus"};
        case BlockKind::Antiproduct:
            return {"product", "minus"};
        case BlockKind::ArithmeticMean:
            return {"sum", "S"};
        case BlockKind::HarmonicMean:
            return {"sum", "I"};
    }
    return {"?", ""};
}

BlockKind kind_from_fields(const std::string &op, const std::string &branch) {
    if (op == "invert") {
        return BlockKind::Invert;
    }
    if (op == "product") {
        if (branch.empty() || branch == "plus" || branch == "+") {
            return BlockKind::Product;
        }
        if (branch == "minus" || branch == "-") {
            return BlockKind::Antiproduct;
        }
    }
    if (op == "antiproduct") {
        return BlockKind::Antiproduct;
    }
    if (op == "sum") {
        if (branch.empty() || branch == "S" || branch == "arithmetic") {
            return BlockKind::ArithmeticMean;
        }
        if (branch == "I" || branch == "harmonic") {
            return BlockKind::HarmonicMean;
        }
    }
    if (op == "harmonic") {
        return BlockKind::HarmonicMean;
    }
    throw ParseError("unknown block op '" + op + "' with branch '" + branch + "'");
}

}  // namespace

Json circuit_to_json(const BlockCircuit &circuit) {
    Json regs = Json::array();
    for (const auto &c : circuit.registers()) {
        regs.push_back(coin_to_json(c));
    }
    Json nodes = Json::array();
    for (const auto &node : circuit.nodes()) {
        auto [op, branch] = op_fields(node.kind);
        Json in = Json::array();
        for (const auto &w : node.inputs) {
            in.push_back(wire_to_json(w));
        }
        Json n{{"op", op}, {"in", in}};
        if (!branch.empty()) {
            n["branch"] = branch;
        }
        nodes.push_back(n);
    }
    WireRef out = circuit.output();
    Json output = out.source == WireRef::Source::Node ? Json(out.index) : wire_to_json(out);
    return Json{{"data_inputs", circuit.n_data_inputs()}, {"registers", regs}, {"nodes", nodes}, {"output", output}};
}

BlockCircuit circuit_from_json(const Json &j) {
    try {
        std::vector<Coin> regs;
        if (j.contains("registers")) {
            for (const auto &r : j.at("registers")) {
                regs.push_back(coin_from_json(r));
            }
        }
        std::vector<CircuitNode> nodes;
        if (j.contains("nodes")) {
            for (const auto &n : j.at("nodes")) {
                std::string branch = n.contains("branch") ? n.at("branch").get<std::string>() : "";
                CircuitNode node{kind_from_fields(n.at("op").get<std::string>(), branch), {}};
                for (const auto &w : n.at("in")) {
                    node.inputs.push_back(wire_from_json(w));
                }
                nodes.push_back(std::move(node));
            }
        }
        return BlockCircuit(j.at("data_inputs").get<std::size_t>(), std::move(regs), std::move(nodes),
                            wire_from_json(j.at("output")));
    } catch (const Json::exception &e) {
        throw ParseError(std::string("bad circuit JSON: ") + e.what());
    }
}

FunctionSpec function_from_json(const Json &j) {
    auto list = [](const Json &arr) {
        std::vector<Complex> out;
        for (const auto &x : arr) {
            out.push_back(complex_from_json(x));
        }
        return out;
    };
    try {
        if (j.contains("num") || j.contains("den")) {
            RationalFunction f{list(j.at("num")), j.contains("den") ? list(j.at("den")) : std::vector<Complex>{1.0}};
            return f;
        }
        if (j.contains("c0")) {
            FactoredRational f{complex_from_json(j.at("c0")), {}, {}};
            if (j.contains("zeros")) {
                f.zeros = list(j.at("zeros"));
            }
            if (j.contains("poles")) {
                f.poles = list(j.at("poles"));
            }
            return f;
        }
    } catch (const Json::exception &e) {
        throw ParseError(std::string("bad function JSON: ") + e.what());
    }
    throw ParseError("function JSON needs \"num\"/\"den\" or \"c0\"/\"zeros\"/\"poles\"");
}

Json function_to_json(const RationalFunction &f) {
    Json num = Json::array();
    Json den = Json::array();
    for (auto c : f.num) {
        num.push_back(complex_to_json(c));
    }
    for (auto c : f.den) {
        den.push_back(complex_to_json(c));
    }
    return Json{{"num", num}, {"den", den}};
}

Json counts_to_json(const CountRecord &c) {
    Json out{{"shots", c.shots}};
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        if (c[b]) {
            out[std::string(to_string(b))] = Json::array({(*c[b])[0], (*c[b])[1]});
        }
    }
    return out;
}

CountRecord counts_from_json(const Json &j) {
    try {
        CountRecord c;
        c.shots = j.value("shots", std::uint64_t{0});
        for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
            std::string key(to_string(b));
            if (j.contains(key)) {
                const auto &pair = j.at(key);
                c[b] = std::array<std::uint64_t, 2>{pair.at(0).get<std::uint64_t>(), pair.at(1).get<std::uint64_t>()};
            }
        }
        return c;
    } catch (const Json::exception &e) {
        throw ParseError(std::string("bad count record: ") + e.what());
    }
}

Json density_to_json(const DensityMatrix2 &rho) {
    return Json::array({Json::array({complex_to_json(rho(0, 0)), complex_to_json(rho(0, 1))}),
                        Json::array({complex_to_json(rho(1, 0)), complex_to_json(rho(1, 1))})});
}

Json outcome_to_json(const BlockOutcome &out) {
    Json j{{"success_prob", out.success_prob}, {"indefinite", out.indefinite()}};
    if (out.ideal_coin) {
        j["ideal_coin"] = coin_to_json(*out.ideal_coin);
    }
    if (out.state) {
        j["state"] = density_to_json(*out.state);
    }
    return j;
}

Json report_to_json(const CompilationReport &r) {
    return Json{{"op_count", r.op_count},
                {"degree", r.degree},
                {"bound", r.bound},
                {"photons_data", r.photons_data},
                {"photons_register", r.photons_register},
                {"degenerate", r.degenerate},
                {"warnings", r.warnings},
                {"circuit", circuit_to_json(r.circuit)}};
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace qqbf
