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

#include "qqbf/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qqbf/parallel.hpp"

namespace qqbf {

std::string_view to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Invert:
            return "invert";
        case BlockKind::Product:
            return "product";
        case BlockKind::Antiproduct:
            return "antiproduct";
        case BlockKind::ArithmeticMean:
            return "sum";
        case BlockKind::HarmonicMean:
            return "harmonic";
    }
    return "?";
}

int arity(BlockKind kind) {
    return kind == BlockKind::Invert ? 1 : 2;
}

bool is_product(BlockKind kind) {
    return kind == BlockKind::Product || kind == BlockKind::Antiproduct;
}

bool is_sum(BlockKind kind) {
    return kind == BlockKind::ArithmeticMean || kind == BlockKind::HarmonicMean;
}

ProductBranch product_branch(BlockKind kind) {
    return kind == BlockKind::Antiproduct ? ProductBranch::Minus : ProductBranch::Plus;
}

SumBranch sum_branch(BlockKind kind) {
    return kind == BlockKind::HarmonicMean ? SumBranch::Harmonic : SumBranch::Arithmetic;
}

BlockKind block_kind(ProductBranch branch) {
    return branch == ProductBranch::Plus ? BlockKind::Product : BlockKind::Antiproduct;
}

BlockKind block_kind(SumBranch branch) {
    return branch == SumBranch::Arithmetic ? BlockKind::ArithmeticMean : BlockKind::HarmonicMean;
}

BlockCircuit::BlockCircuit(std::size_t n_data_inputs, std::vector<Coin> registers, std::vector<CircuitNode> nodes,
                           WireRef output)
    : n_data_(n_data_inputs), registers_(std::move(registers)), nodes_(std::move(nodes)), output_(output) {
    std::vector<bool> data_used(n_data_, false);
    std::vector<bool> reg_used(registers_.size(), false);
    std::vector<bool> node_used(nodes_.size(), false);

    auto consume = [&](const WireRef &w, std::size_t limit_node) {
        std::vector<bool> *used = nullptr;
        std::size_t bound = 0;
        switch (w.source) {
            case WireRef::Source::Data:
                used = &data_used;
                bound = n_data_;
                break;
            case WireRef::Source::Register:
                used = &reg_used;
                bound = registers_.size();
                break;
            case WireRef::Source::Node:
                used = &node_used;
                bound = limit_node;
                break;
        }
        if (w.index >= bound) {
            throw std::invalid_argument("circuit wire reference out of range (nodes may only use earlier nodes)");
        }
        if ((*used)[w.index]) {
            throw std::invalid_argument("circuit wire consumed more than once");
        }
        (*used)[w.index] = true;
    };

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto &node = nodes_[i];
        if (static_cast<int>(node.inputs.size()) != arity(node.kind)) {
            throw std::invalid_argument("node " + std::to_string(i) + " (" + std::string(to_string(node.kind)) +
                                        ") has the wrong number of inputs");
        }
        for (const auto &w : node.inputs) {
            consume(w, i);
        }
    }
    consume(output_, nodes_.size());
}

std::size_t BlockCircuit::op_count() const {
    std::size_t count = 0;
    for (const auto &node : nodes_) {
        count += node.kind == BlockKind::Invert ? 0 : 1;
    }
    return count;
}

std::size_t BlockCircuit::photon_count() const {
    std::size_t count = 0;
    auto visit = [&](const WireRef &w) {
        count += w.source == WireRef::Source::Node ? 0 : 1;
    };
    for (const auto &node : nodes_) {
        for (const auto &w : node.inputs) {
            visit(w);
        }
    }
    visit(output_);
    return count;
}

IdealResult evaluate_ideal(const BlockCircuit &circuit, std::span<const Coin> data) {
    if (data.size() != circuit.n_data_inputs()) {
        throw std::invalid_argument("expected " + std::to_string(circuit.n_data_inputs()) + " data coins, got " +
                                    std::to_string(data.size()));
    }
    std::vector<std::optional<Coin>> values(circuit.nodes().size());
    auto fetch = [&](const WireRef &w) -> const Coin & {
        switch (w.source) {
            case WireRef::Source::Data:
                return data[w.index];
            case WireRef::Source::Register:
                return circuit.registers()[w.index];
            case WireRef::Source::Node:
                break;
        }
        return *values[w.index];
    };

    const Visibility ideal(1.0);
    double prob = 1.0;
    for (std::size_t i = 0; i < circuit.nodes().size(); ++i) {
        const auto &node = circuit.nodes()[i];
        if (node.kind == BlockKind::Invert) {
            values[i] = invert(fetch(node.inputs[0]));
            continue;
        }
        const Coin &x = fetch(node.inputs[0]);
        const Coin &y = fetch(node.inputs[1]);
        BlockOutcome step = is_product(node.kind) ? product_output(x, y, product_branch(node.kind), ideal)
                                                  : sum_output(x, y, sum_branch(node.kind), ideal);
        if (step.indefinite()) {
            return {std::nullopt, 0.0};
        }
        prob *= step.success_prob;
        values[i] = *step.ideal_coin;
    }
    return {fetch(circuit.output()).normalized(), prob};
}

std::vector<IdealResult> evaluate_ideal_batch(const BlockCircuit &circuit,
                                              std::span<const std::vector<Coin>> rows) {
    std::vector<IdealResult> out(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) { out[i] = evaluate_ideal(circuit, rows[i]); });
    return out;
}

std::string_view to_string(ChainCombo combo) {
    switch (combo) {
        case ChainCombo::SP:
            return "SP";
        case ChainCombo::MP:
            return "MP";
        case ChainCombo::SA:
            return "SA";
        case ChainCombo::MA:
            return "MA";
    }
    return "?";
}

SumBranch sum_branch(ChainCombo combo) {
    return combo == ChainCombo::SP || combo == ChainCombo::SA ? SumBranch::Arithmetic : SumBranch::Harmonic;
}

ProductBranch product_branch(ChainCombo combo) {
    return combo == ChainCombo::SP || combo == ChainCombo::MP ? ProductBranch::Plus : ProductBranch::Minus;
}

ChainCombo chain_combo(SumBranch sum, ProductBranch product) {
    if (sum == SumBranch::Arithmetic) {
        return product == ProductBranch::Plus ? ChainCombo::SP : ChainCombo::SA;
    }
    return product == ProductBranch::Plus ? ChainCombo::MP : ChainCombo::MA;
}

double concat3_success_prob(const Coin &z1, const Coin &z2, const Coin &z3, ChainCombo combo) {
    auto mean = ideal_sum(z1, z2, sum_branch(combo));
    if (!mean) {
        return 0.0;
    }
    return sum_success_prob(z1, z2, sum_branch(combo)) * product_success_prob(*mean, z3);
}

BlockOutcome concat3_output(const Coin &z1, const Coin &z2, const Coin &z3, ChainCombo combo, Visibility v) {
    Coin u1 = z1.normalized();
    Coin u2 = z2.normalized();
    Coin u3 = z3.normalized();
    double vis = v.value();
    double sign = product_branch(combo) == ProductBranch::Plus ? 1.0 : -1.0;
    // Pairwise overlaps enter linearly; the all-three overlap carries V^{3/2}.
    double coherence = sign * (1.0 + std::sqrt(vis)) * vis;

    Complex x1 = u1.a() * u2.b();
    Complex x2 = u2.a() * u1.b();
    Complex cross = x1 + x2;
    double partial = std::norm(x1) + std::norm(x2) + 2.0 * vis * (x1 * std::conj(x2)).real();

    DensityMatrix2::Entries m;
    if (sum_branch(combo) == SumBranch::Arithmetic) {
        Complex bbb = u1.b() * u2.b() * u3.b();
        Complex off = coherence * cross * u3.a() * std::conj(bbb);
        m = {Complex{std::norm(u3.a()) * partial}, off, std::conj(off), Complex{2.0 * (1.0 + vis) * std::norm(bbb)}};
    } else {
        Complex aaa = u1.a() * u2.a() * u3.a();
        Complex off = coherence * aaa * std::conj(cross * u3.b());
        m = {Complex{2.0 * (1.0 + vis) * std::norm(aaa)}, off, std::conj(off), Complex{std::norm(u3.b()) * partial}};
    }

    auto mean = ideal_sum(u1, u2, sum_branch(combo));
    std::optional<Coin> ideal;
    if (mean) {
        ideal = ideal_product(*mean, u3, product_branch(combo));
    }
    double tr = m[0].real() + m[3].real();
    if (!ideal || !(tr >= numeric_policy().indefinite_trace)) {
        return BlockOutcome::make_indefinite();
    }
    BlockOutcome out;
    out.state = DensityMatrix2::from_unnormalized(m);
    out.success_prob = tr / 32.0;
    out.ideal_coin = ideal->normalized();
    return out;
}

BlockCircuit concat3_circuit(ChainCombo combo) {
    std::vector<CircuitNode> nodes{
        {block_kind(sum_branch(combo)), {WireRef::data(0), WireRef::data(1)}},
        {block_kind(product_branch(combo)), {WireRef::node(0), WireRef::data(2)}},
    };
    return BlockCircuit(3, {}, std::move(nodes), WireRef::node(1));
}

namespace {

void require_finite(Complex x, const char *what) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

BlockCircuit program_linear(Complex alpha, Complex beta) {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    if (alpha == Complex{}) {
        throw std::invalid_argument("alpha = 0 has no sum-product program; use template 7 or 8");
    }
    std::vector<CircuitNode> nodes{
        {BlockKind::ArithmeticMean, {WireRef::data(0), WireRef::reg(0)}},
        {BlockKind::Product, {WireRef::node(0), WireRef::reg(1)}},
    };
    return BlockCircuit(1, {Coin::from_complex(beta / alpha), Coin::from_complex(2.0 * alpha)}, std::move(nodes),
                        WireRef::node(1));
}

BlockCircuit program_linear_product_first(Complex alpha, Complex beta) {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    std::vector<CircuitNode> nodes{
        {BlockKind::Product, {WireRef::data(0), WireRef::reg(0)}},
        {BlockKind::ArithmeticMean, {WireRef::node(0), WireRef::reg(1)}},
    };
    return BlockCircuit(1, {Coin::from_complex(2.0 * alpha), Coin::from_complex(2.0 * beta)}, std::move(nodes),
                        WireRef::node(1));
}

BlockCircuit exact_sum_circuit() {
    std::vector<CircuitNode> nodes{
        {BlockKind::ArithmeticMean, {WireRef::data(0), WireRef::data(1)}},
        {BlockKind::Product, {WireRef::node(0), WireRef::reg(0)}},
    };
    return BlockCircuit(2, {Coin::from_complex(2.0)}, std::move(nodes), WireRef::node(1));
}

BlockCircuit template_circuit(int id, const Coin &a, const Coin &b, ProductBranch branch) {
    const BlockKind mul = block_kind(branch);
    const BlockKind add = BlockKind::ArithmeticMean;
    auto d = WireRef::data;
    auto r = WireRef::reg;
    auto n = WireRef::node;
    auto build = [&](std::size_t n_data, std::vector<Coin> regs, CircuitNode first, CircuitNode second) {
        return BlockCircuit(n_data, std::move(regs), {std::move(first), std::move(second)}, n(1));
    };
    switch (id) {
        case 1:
            return build(2, {a}, {add, {r(0), d(0)}}, {mul, {n(0), d(1)}});
        case 2:
            return build(2, {a}, {add, {d(0), d(1)}}, {mul, {n(0), r(0)}});
        case 3:
            return build(1, {a, b}, {add, {r(0), r(1)}}, {mul, {n(0), d(0)}});
        case 4:
            return build(1, {a, b}, {add, {r(0), d(0)}}, {mul, {n(0), r(1)}});
        case 5:
            return build(2, {a}, {mul, {r(0), d(0)}}, {add, {n(0), d(1)}});
        case 6:
            return build(2, {a}, {mul, {d(0), d(1)}}, {add, {n(0), r(0)}});
        case 7:
            return build(1, {a, b}, {mul, {r(0), r(1)}}, {add, {n(0), d(0)}});
        case 8:
            return build(1, {a, b}, {mul, {r(0), d(0)}}, {add, {n(0), r(1)}});
        default:
            throw std::invalid_argument("template id must be in 1..8, got " + std::to_string(id));
    }
}

std::string_view to_string(ConcatOrder order) {
    return order == ConcatOrder::SumProduct ? "sum-product" : "product-sum";
}

OrderProbabilities linear_order_probabilities(Complex alpha0, Complex alpha1, const Coin &z) {
    const Coin data[] = {z};
    return {evaluate_ideal(program_linear(alpha1, alpha0), data).success_prob,
            evaluate_ideal(program_linear_product_first(alpha1, alpha0), data).success_prob};
}

ConcatOrder choose_order(Complex alpha0, Complex alpha1) {
    require_finite(alpha0, "alpha0");
    require_finite(alpha1, "alpha1");
    if (alpha1 == Complex{}) {
        throw std::invalid_argument("alpha1 must be non-zero");
    }
    // P_SP / P_PS = (1 + 4|alpha0|^2) / (1 + |alpha0 / alpha1|^2) for every z.
    if (alpha0 == Complex{} || std::norm(alpha1) >= 0.25) {
        return ConcatOrder::SumProduct;
    }
    return ConcatOrder::ProductSum;
}

}  // namespace qqbf
