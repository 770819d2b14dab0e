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

// Text and JSON formats.
//
//   complex   "1+2i", "-i", "3"   or {"re": 1, "im": 2}, [1, 2], 3
//   coin      any complex, "inf", or {"a": complex, "b": complex}
//   circuit   {"data_inputs": n, "registers": [coin...],
//              "nodes": [{"op": "sum", "branch": "S", "in": [{"data": 0}, {"reg": 1}]},
//                        {"op": "product", "branch": "plus", "in": [{"node": 0}, {"data": 1}]},
//                        {"op": "invert", "in": [{"node": 1}]}],
//              "output": 2}         (a node index, or {"data": i} / {"reg": i})
//   function  {"num": [...], "den": [...]} or {"c0": c, "zeros": [...], "poles": [...]}
//   counts    {"X": [n+, n-], "Y": [...], "Z": [...], "shots": s}

#ifndef QQBF_JSON_IO_HPP
#define QQBF_JSON_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qqbf/blocks.hpp"
#include "qqbf/chain.hpp"
#include "qqbf/compiler.hpp"
#include "qqbf/core.hpp"
#include "qqbf/estimation.hpp"

namespace qqbf {

using Json = nlohmann::json;

class ParseError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

Complex parse_complex(std::string_view text);
/// Comma-separated complex values; an empty string gives an empty list.
std::vector<Complex> parse_complex_list(std::string_view text);
/// Inline complex, "inf", or a JSON coin.
Coin parse_coin(std::string_view text);
std::string format_complex(Complex z, int precision = 12);
std::string format_coin(const Coin &c, int precision = 12);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);
Json coin_to_json(const Coin &c);
Coin coin_from_json(const Json &j);

Json circuit_to_json(const BlockCircuit &circuit);
BlockCircuit circuit_from_json(const Json &j);

using FunctionSpec = std::variant<RationalFunction, FactoredRational>;
FunctionSpec function_from_json(const Json &j);
Json function_to_json(const RationalFunction &f);

Json counts_to_json(const CountRecord &c);
CountRecord counts_from_json(const Json &j);

Json density_to_json(const DensityMatrix2 &rho);
Json outcome_to_json(const BlockOutcome &out);
Json report_to_json(const CompilationReport &r);

/// Parses text as JSON, rethrowing syntax errors as ParseError.
Json parse_json(std::string_view text);

}  // namespace qqbf

#endif  // QQBF_JSON_IO_HPP
