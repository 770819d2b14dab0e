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

// The three primitive building blocks: inversion (deterministic),
// product/antiproduct (PBS interferometer) and arithmetic/harmonic mean
// (two-BS interferometer). Every formula is homogeneous in the coin
// amplitudes, so z = inf needs no special case; the familiar z-forms are the
// b = 1 specialization.

#ifndef QQBF_BLOCKS_HPP
#define QQBF_BLOCKS_HPP

#include <optional>
#include <string_view>

#include "qqbf/core.hpp"

namespace qqbf {

enum class ProductBranch { Plus, Minus };
enum class SumBranch { Arithmetic, Harmonic };  // "S" and "I" heralds

std::string_view to_string(ProductBranch branch);
std::string_view to_string(SumBranch branch);

/// Result of one post-selected block. `state` and `ideal_coin` are empty
/// exactly when the operation is indefinite; success_prob is 0 then.
struct BlockOutcome {
    std::optional<DensityMatrix2> state;
    double success_prob = 0.0;
    std::optional<Coin> ideal_coin;

    bool indefinite() const { return !state.has_value(); }
    /// Single-evaluation access: throws IndefiniteError for indefinite outcomes.
    const DensityMatrix2 &require_state() const;
    const Coin &require_coin() const;

    static BlockOutcome make_indefinite() { return {}; }
};

/// |z> -> |1/z>: swaps the amplitudes. Success probability 1.
Coin invert(const Coin &c);

/// Ideal coins; nullopt at the critical points.
std::optional<Coin> ideal_product(const Coin &c1, const Coin &c2, ProductBranch branch);
std::optional<Coin> ideal_sum(const Coin &c1, const Coin &c2, SumBranch branch);

/// P+ = P- = (|a1 a2|^2 + |b1 b2|^2) / (2 |c1|^2 |c2|^2). Independent of V.
double product_success_prob(const Coin &c1, const Coin &c2);

/// V-corrected product/antiproduct output
/// N [[|z1 z2|^2, +-V z1 z2], [+-V conj(z1 z2), 1]].
BlockOutcome product_output(const Coin &c1, const Coin &c2, ProductBranch branch, Visibility v);

/// Ideal (V = 1) post-selection probability of the sum interferometer.
///   S: (|a1 b2 + a2 b1|^2 + 4 |b1 b2|^2) / (16 D)
///   I: (|a1 b2 + a2 b1|^2 + 4 |a1 a2|^2) / (16 D),   D = |c1|^2 |c2|^2
double sum_success_prob(const Coin &c1, const Coin &c2, SumBranch branch);

/// V-corrected arithmetic/harmonic mean output. Distinguishable photons do
/// not bunch at the first beam splitter, so the returned success_prob is the
/// trace of the unnormalized matrix over 16 D and depends on V; at V = 1 it
/// equals sum_success_prob.
BlockOutcome sum_output(const Coin &c1, const Coin &c2, SumBranch branch, Visibility v);

/// Disc bounds near the critical points: r^2/2 and (r^2/16)(3 + 4 r^2).
double prob_bound_product(double r);
double prob_bound_sum(double r);

}  // namespace qqbf

#endif  // QQBF_BLOCKS_HPP
