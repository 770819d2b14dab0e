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

// Brute-force second-quantized simulation of up to three photons carrying a
// polarization and an internal label. Used to cross-check every closed form.
//
// Phase conventions (single-photon creation operators, in place):
//   beam splitter           x -> (x + i y)/sqrt2,  y -> (i x + y)/sqrt2
//   polarizing splitter     x_H -> x_H, x_V -> i y_V, y_H -> y_H, y_V -> i x_V
// The product block adds a diag(1, -1) plate on the kept arm and a Hadamard
// (HWP at pi/8) on the trigger arm; the mean block sends both photons through
// one beam splitter and then splits the kept port with a vacuum mode.

#ifndef QQBF_FOCK_ORACLE_HPP
#define QQBF_FOCK_ORACLE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qqbf/blocks.hpp"
#include "qqbf/chain.hpp"
#include "qqbf/core.hpp"

namespace qqbf {

/// Single-particle modes (spatial, polarization, label).
struct ModeBasis {
    std::size_t spatial = 0;
    std::size_t labels = 1;

    std::size_t dim() const { return spatial * 2 * labels; }
    std::size_t index(std::size_t s, int pol, std::size_t label) const {
        return (s * 2 + static_cast<std::size_t>(pol)) * labels + label;
    }
};

/// Unitary on spatial (x) polarization; acts as the identity on labels.
class LinearNetwork {
   public:
    explicit LinearNetwork(std::size_t spatial = 0);

    std::size_t spatial() const { return spatial_; }
    /// Adds a fresh vacuum mode and returns its index.
    std::size_t add_mode();

    void beam_splitter(std::size_t x, std::size_t y);
    void polarizing_beam_splitter(std::size_t x, std::size_t y);
    /// Applies a 2x2 matrix on the (H, V) amplitudes of one spatial mode.
    void waveplate(std::size_t s, const std::array<Complex, 4> &m);

    /// U[(s, p), (s', p')] in row-major order, dimension 2 * spatial().
    Complex operator()(std::size_t row, std::size_t col) const { return u_[row * dim() + col]; }
    std::size_t dim() const { return 2 * spatial_; }

    /// max |U^dagger U - I|.
    double unitarity_error() const;

   private:
    void apply(std::size_t s1, std::size_t s2, const std::array<Complex, 16> &g);

    std::size_t spatial_;
    std::vector<Complex> u_;
};

/// Sparse Fock state: occupation vector over ModeBasis -> amplitude.
struct FockState {
    ModeBasis basis;
    std::map<std::vector<std::uint8_t>, Complex> amplitudes;

    double norm2() const;
};

struct InputPhoton {
    std::size_t spatial;
    Coin polarization;
    std::size_t label;
};

/// Product of single-photon creation operators pushed through the network.
FockState evolve(const LinearNetwork &net, std::span<const InputPhoton> photons, std::size_t labels);

struct MixtureComponent {
    double weight;
    std::vector<std::size_t> labels;  // one internal label per photon
};

/// Orthogonal-fluctuation model for uniform pairwise visibility V.
///   1 photon: {0} weight 1
///   2 photons: {0,0} V, {0,1} 1 - V
///   3 photons: {0,0,0} V^(3/2); {0,0,1}, {0,1,0}, {1,0,0} V - V^(3/2) each;
///              {0,1,2} 1 - 3V + 2V^(3/2)
/// Throws std::invalid_argument ("unsupported photon number") otherwise.
std::vector<MixtureComponent> uniform_visibility_mixture(std::size_t photons, Visibility v);

/// Optical layout of a BlockCircuit: network, input photons, heralds, output.
struct OpticalLayout {
    LinearNetwork network;
    std::vector<InputPhoton> photons;  // labels left at 0
    std::vector<std::pair<std::size_t, int>> heralds;  // (spatial mode, required polarization)
    std::size_t output_mode = 0;
};

OpticalLayout layout_circuit(const BlockCircuit &circuit, std::span<const Coin> data);

/// Post-selected, label-traced output of a whole circuit (at most 3 photons).
BlockOutcome simulate_circuit(const BlockCircuit &circuit, std::span<const Coin> data, Visibility v);

/// Single block: Invert ignores z2.
BlockOutcome oracle_block(BlockKind kind, const Coin &z1, const Coin &z2, Visibility v);
BlockOutcome oracle_chain3(const Coin &z1, const Coin &z2, const Coin &z3, ChainCombo combo, Visibility v);

/// Probability of every trigger outcome (bit i set = herald i saw the other
/// polarization) and of geometrically rejected patterns, for one label
/// assignment. Entries sum to the state norm, i.e. 1.
struct TriggerDistribution {
    std::vector<double> triggers;
    double rejected = 0.0;
};
TriggerDistribution trigger_distribution(const BlockCircuit &circuit, std::span<const Coin> data,
                                         std::span<const std::size_t> labels);

}  // namespace qqbf

#endif  // QQBF_FOCK_ORACLE_HPP
