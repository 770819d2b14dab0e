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

"""Quantum-to-quantum Bernoulli factory simulator and rational-function compiler."""

import json

from ._qqbf import (
    Coin,
    IndefiniteError,
    bias,
    block,
    chain,
    choose_order,
    coin_density,
    concat3_success_prob,
    factor_polynomial,
    fidelity,
    format_coin,
    invert,
    parse_coin,
    product_success_prob,
    projectively_equal,
    sample_haar,
    simulate_circuit,
    sum_success_prob,
    tomography,
)
from . import _qqbf


def coin(value):
    """Coin from a complex number, a string such as "1-2i", or "inf"."""
    if isinstance(value, Coin):
        return value
    if isinstance(value, str):
        return parse_coin(value)
    return Coin.from_complex(complex(value))


def program_linear(alpha, beta):
    return json.loads(_qqbf.program_linear(complex(alpha), complex(beta)))


def evaluate_circuit(circuit, data):
    text = circuit if isinstance(circuit, str) else json.dumps(circuit)
    return _qqbf.evaluate_circuit(text, [coin(d) for d in data])


def compile_rational(num, den=(1,)):
    return json.loads(_qqbf.compile_rational([complex(c) for c in num], [complex(c) for c in den]))


__all__ = [
    "Coin",
    "IndefiniteError",
    "bias",
    "block",
    "chain",
    "choose_order",
    "coin",
    "coin_density",
    "compile_rational",
    "concat3_success_prob",
    "evaluate_circuit",
    "factor_polynomial",
    "fidelity",
    "format_coin",
    "invert",
    "parse_coin",
    "product_success_prob",
    "program_linear",
    "projectively_equal",
    "sample_haar",
    "simulate_circuit",
    "sum_success_prob",
    "tomography",
]
