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

#ifndef QQBF_CHAIN_HPP
#define QQBF_CHAIN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qqbf/blocks.hpp"
#include "qqbf/core.hpp"

namespace qqbf {

enum class BlockKind { Invert, Product, Antiproduct, ArithmeticMean, HarmonicMean };

std::string_view to_string(BlockKind kind);
int arity(BlockKind kind);
bool is_product(BlockKind kind);
bool is_sum(BlockKind kind);
ProductBranch product_branch(BlockKind kind);
SumBranch sum_branch(BlockKind kind);
BlockKind block_kind(ProductBranch branch);
BlockKind block_kind(SumBranch branch);

/// A wire: one photon coming from a data input, a program register, or the
/// output of an earlier node.
struct WireRef {
    enum class Source { Data, Register, Node };
    Source source;
    std::size_t index;

    static WireRef data(std::size_t i) { return {Source::Data, i}; }
    static WireRef reg(std::size_t i) { return {Source::Register, i}; }
    static WireRef node(std::size_t i) { return {Source::Node, i}; }

    friend bool operator==(const WireRef &, const WireRef &) = default;
};

struct CircuitNode {
    BlockKind kind;
    std::vector<WireRef> inputs;
};

/// DAG of blocks. Nodes may only reference earlier nodes, and every wire is
/// consumed at most once (photons are destroyed by detection or passed on).
/// Construction validates; instances are immutable afterwards.
class BlockCircuit {
   public:
    BlockCircuit(std::size_t n_data_inputs, std::vector<Coin> registers, std::vector<CircuitNode> nodes,
                 WireRef output);

    std::size_t n_data_inputs() const { return n_data_; }
    const std::vector<Coin> &registers() const { return registers_; }
    const std::vector<CircuitNode> &nodes() const { return nodes_; }
    WireRef output() const { return output_; }

    /// Sums and products; inversions are free and not counted.
    std::size_t op_count() const;
    /// Number of photons the circuit actually consumes (data + registers).
    std::size_t photon_count() const;

   private:
    std::size_t n_data_;
    std::vector<Coin> registers_;
    std::vector<CircuitNode> nodes_;
    WireRef output_;
};

struct IdealResult {
    std::optional<Coin> coin;  // empty when some node was indefinite
    double success_prob = 0.0;
};

/// Propagates ideal coins node by node; the success probability is the
/// product of each node's probability at its actual inputs.
IdealResult evaluate_ideal(const BlockCircuit &circuit, std::span<const Coin> data);

/// Runs evaluate_ideal over many input rows; rows are evaluated in parallel,
/// results keep input order.
std::vector<IdealResult> evaluate_ideal_batch(const BlockCircuit &circuit,
                                              std::span<const std::vector<Coin>> rows);

/// The four two-stage concatenations: mean block on (z1, z2) feeding the
/// product block together with z3.
enum class ChainCombo { SP, MP, SA, MA };

std::string_view to_string(ChainCombo combo);
SumBranch sum_branch(ChainCombo combo);
ProductBranch product_branch(ChainCombo combo);
ChainCombo chain_combo(SumBranch sum, ProductBranch product);

/// P_stage2(mean(z1, z2), z3) * P_stage1(z1, z2); 0 at indefinite points.
double concat3_success_prob(const Coin &z1, const Coin &z2, const Coin &z3, ChainCombo combo);

/// V-corrected three-photon output (uniform pairwise V). success_prob is the
/// V-aware post-selection probability; it equals concat3_success_prob at V = 1.
BlockOutcome concat3_output(const Coin &z1, const Coin &z2, const Coin &z3, ChainCombo combo, Visibility v);

/// Two-node circuit with three data inputs realizing the combo.
BlockCircuit concat3_circuit(ChainCombo combo);

/// |z> (x) |beta/alpha> |2 alpha> -> |alpha z + beta>: sum(S) with register
/// beta/alpha, then product(+) with register 2 alpha.
BlockCircuit program_linear(Complex alpha, Complex beta);

/// alpha z + beta with the product first: product(z, 2 alpha) then sum(S)
/// with register 2 beta.
BlockCircuit program_linear_product_first(Complex alpha, Complex beta);

/// |z1 + z2| as sum(S) followed by a product with register 2.
BlockCircuit exact_sum_circuit();

/// Two-module programmable functions. Ids 1-4 are sum then product, 5-8
/// product then sum:
///   1 (a,z,z) -> (a+z) z / 2      5 (a,z,z) -> (a+1) z / 2
///   2 (z,z,a) -> a z              6 (z,z,a) -> (z^2 + a) / 2
///   3 (a,b,z) -> (a+b) z / 2      7 (a,b,z) -> (a b + z) / 2
///   4 (a,z,b) -> (z+a) b / 2      8 (a,z,b) -> (a z + b) / 2
/// Minus switches the product herald and negates the result.
BlockCircuit template_circuit(int id, const Coin &a, const Coin &b, ProductBranch branch = ProductBranch::Plus);

enum class ConcatOrder { SumProduct, ProductSum };

std::string_view to_string(ConcatOrder order);

struct OrderProbabilities {
    double sum_product;
    double product_sum;
};

/// Success probabilities of alpha1 z + alpha0 in both orders at z.
OrderProbabilities linear_order_probabilities(Complex alpha0, Complex alpha1, const Coin &z);

/// Picks the order with the larger success probability, which for every z is
/// SumProduct iff |alpha1|^2 >= 1/4 (ties go to SumProduct).
ConcatOrder choose_order(Complex alpha0, Complex alpha1);

}  // namespace qqbf

#endif  // QQBF_CHAIN_HPP
