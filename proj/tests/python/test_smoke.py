# Copyright 2026 The qqbf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import qqbf


def test_coins():
    assert qqbf.coin("inf").is_infinite()
    assert qqbf.coin(2).value() == 2
    assert math.isclose(qqbf.bias(qqbf.coin(2)), 0.2)
    assert qqbf.projectively_equal(qqbf.invert(qqbf.coin(4)), qqbf.coin(0.25))
    assert qqbf.format_coin(qqbf.coin(1 - 2j)) == "1-2i"


def test_blocks():
    out = qqbf.block("product", qqbf.coin(0), qqbf.coin(0))
    assert math.isclose(out["success_prob"], 0.5)
    crit = qqbf.block("harmonic", qqbf.coin(0), qqbf.coin(0))
    assert crit["indefinite"]
    assert crit["state"] is None
    closed = qqbf.block("sum", qqbf.coin(1), qqbf.coin(2j), visibility=0.84)
    oracle = qqbf.block("sum", qqbf.coin(1), qqbf.coin(2j), visibility=0.84, oracle=True)
    for r in range(2):
        for c in range(2):
            assert abs(closed["state"][r][c] - oracle["state"][r][c]) < 1e-9


def test_chain_and_fidelity():
    one = qqbf.coin(1)
    assert math.isclose(qqbf.concat3_success_prob(one, one, one, "SP"), 0.03125)
    out = qqbf.chain(one, one, one, "SP")
    assert qqbf.fidelity(out["state"], qqbf.coin_density(one)) > 1 - 1e-12
    with pytest.raises(ValueError):
        qqbf.chain(one, one, one, "XY")


def test_linear_program_and_compiler():
    circ = qqbf.program_linear(0.5, 0.5)
    value, prob = qqbf.evaluate_circuit(circ, ["1"])
    assert qqbf.projectively_equal(value, qqbf.coin(1))
    assert math.isclose(prob, 0.03125)

    report = qqbf.compile_rational([-1, 0, 1])
    assert report["op_count"] <= report["bound"] == 8
    n = report["circuit"]["data_inputs"]
    value, _ = qqbf.evaluate_circuit(report["circuit"], [2] * n)
    assert qqbf.projectively_equal(value, qqbf.coin(3), 1e-9)

    lead, roots = qqbf.factor_polynomial([6, -5, 1])
    assert sorted(r.real for r in roots) == pytest.approx([2, 3])
    assert qqbf.choose_order(1, 1) == "sum-product"


def test_sampling_and_tomography():
    coins = qqbf.sample_haar(seed=3, n=100)
    assert len(coins) == 100
    again = qqbf.sample_haar(seed=3, n=100)
    assert all(qqbf.projectively_equal(a, b, 0.0) for a, b in zip(coins, again))
    rho = qqbf.coin_density(coins[0])
    exact = qqbf.tomography(rho, 0)
    assert qqbf.fidelity(exact, rho) > 1 - 1e-12
    est = qqbf.tomography(rho, 100000, seed=5)
    assert qqbf.fidelity(est, rho) > 0.99


def test_simulate_circuit():
    circ = json.dumps(qqbf.program_linear(0.5, 0.0))
    out = qqbf.simulate_circuit(circ, [qqbf.coin(-1j)], visibility=0.9)
    assert 0 < out["success_prob"] <= 1
