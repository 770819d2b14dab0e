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

#ifndef QQBF_COMPILER_HPP
#define QQBF_COMPILER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qqbf/chain.hpp"
#include "qqbf/core.hpp"

namespace qqbf {

/// f(z) = sum num[i] z^i / sum den[j] z^j. Coefficients are in ascending order.
struct RationalFunction {
    std::vector<Complex> num;
    std::vector<Complex> den;
};

/// f(z) = c0 prod (z - zeros[i]) / prod (z - poles[j]).
struct FactoredRational {
    Complex c0;
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
};

RationalFunction expand(const FactoredRational &f);

/// Polynomial with the given leading coefficient and roots, ascending order.
std::vector<Complex> expand_roots(Complex leading, std::span<const Complex> roots);

/// Homogeneous evaluation: f at the coin z, nullopt where numerator and
/// denominator both vanish. Throws on an all-zero denominator.
std::optional<Coin> evaluate_rational(const RationalFunction &f, const Coin &z);

struct Factorization {
    Complex leading;
    std::vector<Complex> roots;
};

/// Roots via Durand-Kerner. Trailing (high-order) zero coefficients are
/// dropped first and low-order zeros become exact zero roots. Throws
/// std::invalid_argument for an all-zero input and std::runtime_error when the
/// iteration fails to meet the residual bound.
Factorization factor_polynomial(std::span<const Complex> coeffs);

struct CompilationReport {
    BlockCircuit circuit;
    std::size_t op_count = 0;
    std::size_t degree = 0;  // n = max(h, k) after trimming and cancellation
    std::size_t bound = 0;   // 4n
    std::size_t photons_data = 0;
    std::size_t photons_register = 0;
    std::vector<std::string> warnings;
    bool degenerate = false;  // numerator identically zero
};

/// Lowers f to a circuit with one data input per linear factor. Common
/// numerator/denominator roots (within 1e-7) are cancelled with a warning.
CompilationReport compile_rational(const RationalFunction &f);
CompilationReport compile_factored(const FactoredRational &f);

/// Peephole pass: pushes finite non-zero register constants through products
/// and inversions and multiplies them together, materializing a single
/// product with the combined constant only where a sum or the output needs
/// the wire.
BlockCircuit fold_constants(const BlockCircuit &circuit);

/// End-to-end success probability with every data input fed the coin z.
double circuit_cost(const BlockCircuit &circuit, const Coin &z);

}  // namespace qqbf

#endif  // QQBF_COMPILER_HPP
