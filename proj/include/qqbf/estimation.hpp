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

// Single-qubit tomography and Haar sampling.
//
// Basis convention: sigma_z eigenstates are |H> (+1) and |V> (-1); the coin
// z = 1 sits on the +x axis, so <sigma_x> = 2 Re rho01, <sigma_y> = -2 Im rho01.

#ifndef QQBF_ESTIMATION_HPP
#define QQBF_ESTIMATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qqbf/core.hpp"

namespace qqbf {

enum class PauliBasis { X = 0, Y = 1, Z = 2 };

std::string_view to_string(PauliBasis basis);
PauliBasis parse_pauli_basis(std::string_view name);

/// (p+, p-) for the +1 / -1 eigenprojectors.
std::pair<double, double> measurement_probs(const DensityMatrix2 &rho, PauliBasis basis);

/// Per-basis counts (n+, n-). A basis that was not measured is empty.
struct CountRecord {
    std::array<std::optional<std::array<std::uint64_t, 2>>, 3> counts;
    std::uint64_t shots = 0;

    const std::optional<std::array<std::uint64_t, 2>> &operator[](PauliBasis b) const {
        return counts[static_cast<int>(b)];
    }
    std::optional<std::array<std::uint64_t, 2>> &operator[](PauliBasis b) { return counts[static_cast<int>(b)]; }
};

/// 64-bit seed for the (seed, stream) pair via the SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Binomial draws per basis. Basis b of trial t uses stream 3 t + b, so
/// trials are independent of evaluation order. Throws if shots == 0.
CountRecord sample_counts(const DensityMatrix2 &rho, std::uint64_t shots, std::uint64_t seed,
                          std::uint64_t trial = 0);

/// Linear inversion from empirical expectations followed by projection onto
/// the physical states (negative eigenvalue clipped, weight moved to the other
/// eigenvector). Throws std::invalid_argument when a basis is missing.
DensityMatrix2 reconstruct(const CountRecord &counts);

/// Same estimator fed exact expectations (infinite-shot limit).
DensityMatrix2 reconstruct(const BlochVector &expectations);
DensityMatrix2 reconstruct_exact(const DensityMatrix2 &rho);

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t n = 1;
};

/// Haar-random coins: h uniform on (-1, 1], phi uniform on [0, 2 pi),
/// coin (sqrt(1+h) e^{-i phi}, sqrt(1-h)). h = 1 gives the inf coin.
std::vector<Coin> sample_haar(const SamplerConfig &cfg);

/// Kolmogorov-Smirnov distance between the samples and Uniform[0, 1].
double ks_uniform(std::span<const double> samples);

}  // namespace qqbf

#endif  // QQBF_ESTIMATION_HPP
