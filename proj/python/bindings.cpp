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

// Python bindings. Density matrices cross the boundary as 2x2 nested lists
// of complex numbers; circuits and compilation reports as JSON strings.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qqbf/blocks.hpp"
#include "qqbf/chain.hpp"
#include "qqbf/compiler.hpp"
#include "qqbf/core.hpp"
#include "qqbf/estimation.hpp"
#include "qqbf/fock_oracle.hpp"
#include "qqbf/json_io.hpp"

namespace py = pybind11;
using namespace qqbf;

namespace {

using Matrix = std::array<std::array<Complex, 2>, 2>;

Matrix to_matrix(const DensityMatrix2 &rho) {
    return {{{rho(0, 0), rho(0, 1)}, {rho(1, 0), rho(1, 1)}}};
}

DensityMatrix2 from_matrix(const Matrix &m) {
    return DensityMatrix2::from_entries({m[0][0], m[0][1], m[1][0], m[1][1]});
}

py::dict outcome_dict(const BlockOutcome &o) {
    py::dict d;
    d["success_prob"] = o.success_prob;
    d["indefinite"] = o.indefinite();
    d["state"] = o.state ? py::cast(to_matrix(*o.state)) : py::none();
    d["ideal_coin"] = o.ideal_coin ? py::cast(*o.ideal_coin) : py::none();
    return d;
}

BlockKind parse_kind(const std::string &name) {
    for (BlockKind k : {BlockKind::Invert, BlockKind::Product, BlockKind::Antiproduct, BlockKind::ArithmeticMean,
                        BlockKind::HarmonicMean}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw py::value_error("unknown block kind '" + name + "'");
}

ChainCombo parse_combo(const std::string &name) {
    for (ChainCombo c : {ChainCombo::SP, ChainCombo::MP, ChainCombo::SA, ChainCombo::MA}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    throw py::value_error("unknown combo '" + name + "'");
}

BlockCircuit circuit_from(const std::string &json) {
    return circuit_from_json(parse_json(json));
}

}  // namespace

PYBIND11_MODULE(_qqbf, m) {
    m.doc() = "Quantum-to-quantum Bernoulli factory simulator";

    py::register_exception<IndefiniteError>(m, "IndefiniteError", PyExc_ArithmeticError);

    py::class_<Coin>(m, "Coin")
        .def(py::init<Complex, Complex>(), py::arg("a"), py::arg("b"))
        .def_static("from_complex", &Coin::from_complex)
        .def_static("infinity", &Coin::infinity)
        .def_property_readonly("a", &Coin::a)
        .def_property_readonly("b", &Coin::b)
        .def("value", &Coin::value)
        .def("is_infinite", &Coin::is_infinite)
        .def("normalized", &Coin::normalized)
        .def("__repr__", [](const Coin &c) { return "Coin(" + format_coin(c) + ")"; });

    m.def("parse_coin", [](const std::string &s) { return parse_coin(s); });
    m.def("format_coin", [](const Coin &c) { return format_coin(c); });
    m.def(
        "projectively_equal", [](const Coin &x, const Coin &y, double tol) { return projectively_equal(x, y, tol); },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9);
    m.def("bias", &bias);
    m.def("invert", &invert);
    m.def("coin_density", [](const Coin &c) { return to_matrix(coin_density(c)); });
    m.def("fidelity", [](const Matrix &a, const Matrix &b) { return fidelity(from_matrix(a), from_matrix(b)); });

    m.def("product_success_prob", &product_success_prob);
    m.def(
        "sum_success_prob",
        [](const Coin &x, const Coin &y, bool harmonic) {
            return sum_success_prob(x, y, harmonic ? SumBranch::Harmonic : SumBranch::Arithmetic);
        },
        py::arg("z1"), py::arg("z2"), py::arg("harmonic") = false);
    m.def(
        "block",
        [](const std::string &kind, const Coin &z1, const Coin &z2, double v, bool oracle) {
            BlockKind k = parse_kind(kind);
            if (oracle) {
                return outcome_dict(oracle_block(k, z1, z2, Visibility(v)));
            }
            switch (k) {
                case BlockKind::Product:
                case BlockKind::Antiproduct:
                    return outcome_dict(product_output(z1, z2, product_branch(k), Visibility(v)));
                case BlockKind::ArithmeticMean:
                case BlockKind::HarmonicMean:
                    return outcome_dict(sum_output(z1, z2, sum_branch(k), Visibility(v)));
                case BlockKind::Invert:
                    break;
            }
            Coin c = invert(z1);
            return outcome_dict({coin_density(c), 1.0, c});
        },
        py::arg("kind"), py::arg("z1"), py::arg("z2") = Coin::from_complex(1.0), py::arg("visibility") = 1.0,
        py::arg("oracle") = false);

    m.def("concat3_success_prob", [](const Coin &a, const Coin &b, const Coin &c, const std::string &combo) {
        return concat3_success_prob(a, b, c, parse_combo(combo));
    });
    m.def(
        "chain",
        [](const Coin &a, const Coin &b, const Coin &c, const std::string &combo, double v, bool oracle) {
            ChainCombo k = parse_combo(combo);
            return outcome_dict(oracle ? oracle_chain3(a, b, c, k, Visibility(v))
                                       : concat3_output(a, b, c, k, Visibility(v)));
        },
        py::arg("z1"), py::arg("z2"), py::arg("z3"), py::arg("combo") = "SP", py::arg("visibility") = 1.0,
        py::arg("oracle") = false);

    m.def("program_linear", [](Complex alpha, Complex beta) { return circuit_to_json(program_linear(alpha, beta)).dump(); });
    m.def("choose_order", [](Complex a0, Complex a1) { return std::string(to_string(choose_order(a0, a1))); });
    m.def("evaluate_circuit", [](const std::string &circuit, const std::vector<Coin> &data) {
        IdealResult r = evaluate_ideal(circuit_from(circuit), data);
        return std::make_pair(r.coin, r.success_prob);
    });
    m.def(
        "simulate_circuit",
        [](const std::string &circuit, const std::vector<Coin> &data, double v) {
            return outcome_dict(simulate_circuit(circuit_from(circuit), data, Visibility(v)));
        },
        py::arg("circuit"), py::arg("data"), py::arg("visibility") = 1.0);

    m.def("compile_rational", [](const std::vector<Complex> &num, const std::vector<Complex> &den) {
        return report_to_json(compile_rational({num, den})).dump();
    });
    m.def("factor_polynomial", [](const std::vector<Complex> &coeffs) {
        Factorization f = factor_polynomial(coeffs);
        return std::make_pair(f.leading, f.roots);
    });

    m.def(
        "sample_haar", [](std::uint64_t seed, std::size_t n) { return sample_haar({seed, n}); }, py::arg("seed"),
        py::arg("n"));
    m.def(
        "tomography",
        [](const Matrix &rho, std::uint64_t shots, std::uint64_t seed, std::uint64_t trial) {
            DensityMatrix2 r = from_matrix(rho);
            return to_matrix(shots == 0 ? reconstruct_exact(r) : reconstruct(sample_counts(r, shots, seed, trial)));
        },
        py::arg("rho"), py::arg("shots"), py::arg("seed") = 0, py::arg("trial") = 0);
}
