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

#include "qqbf/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qqbf {

std::string_view to_string(PauliBasis basis) {
    switch (basis) {
        case PauliBasis::X:
            return "X";
        case PauliBasis::Y:
            return "Y";
        case PauliBasis::Z:
            return "Z";
    }
    return "?";
}

PauliBasis parse_pauli_basis(std::string_view name) {
    if (name == "X" || name == "x") {
        return PauliBasis::X;
    }
    if (name == "Y" || name == "y") {
        return PauliBasis::Y;
    }
    if (name == "Z" || name == "z") {
        return PauliBasis::Z;
    }
    throw std::invalid_argument("unknown Pauli basis '" + std::string(name) + "'");
}

namespace {

double expectation(const DensityMatrix2 &rho, PauliBasis basis) {
    BlochVector r = rho.bloch();
    switch (basis) {
        case PauliBasis::X:
            return r.x;
        case PauliBasis::Y:
            return r.y;
        case PauliBasis::Z:
            return r.z;
    }
    return 0;
}

}  // namespace

std::pair<double, double> measurement_probs(const DensityMatrix2 &rho, PauliBasis basis) {
    double p = std::clamp(0.5 * (1.0 + expectation(rho, basis)), 0.0, 1.0);
    return {p, 1.0 - p};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CountRecord sample_counts(const DensityMatrix2 &rho, std::uint64_t shots, std::uint64_t seed, std::uint64_t trial) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    CountRecord out;
    out.shots = shots;
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        std::mt19937_64 rng(derive_seed(seed, 3 * trial + static_cast<std::uint64_t>(b)));
        std::binomial_distribution<std::uint64_t> draw(shots, measurement_probs(rho, b).first);
        std::uint64_t plus = draw(rng);
        out[b] = std::array<std::uint64_t, 2>{plus, shots - plus};
    }
    return out;
}

DensityMatrix2 reconstruct(const BlochVector &expectations) {
    BlochVector r = expectations;
    double len = r.norm();
    // The linear estimate has eigenvalues (1 +- |r|)/2; clipping the negative
    // one and renormalizing leaves the pure state along r.
    if (len > 1.0) {
        r = {r.x / len, r.y / len, r.z / len};
    }
    return DensityMatrix2::from_bloch(r);
}

DensityMatrix2 reconstruct(const CountRecord &counts) {
    double e[3];
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        const auto &c = counts[b];
        if (!c) {
            throw std::invalid_argument("missing basis " + std::string(to_string(b)) + " in count record");
        }
        double total = static_cast<double>((*c)[0] + (*c)[1]);
        if (total == 0) {
            throw std::invalid_argument("basis " + std::string(to_string(b)) + " has no counts");
        }
        e[static_cast<int>(b)] = (static_cast<double>((*c)[0]) - static_cast<double>((*c)[1])) / total;
    }
    return reconstruct(BlochVector{e[0], e[1], e[2]});
}

DensityMatrix2 reconstruct_exact(const DensityMatrix2 &rho) {
    double e[3];
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        auto [plus, minus] = measurement_probs(rho, b);
        e[static_cast<int>(b)] = plus - minus;
    }
    return reconstruct(BlochVector{e[0], e[1], e[2]});
}

std::vector<Coin> sample_haar(const SamplerConfig &cfg) {
    if (cfg.n < 1) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    std::mt19937_64 rng(derive_seed(cfg.seed, 0));
    std::vector<Coin> out;
    out.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        double u = std::generate_canonical<double, 64>(rng);
        double phi = 2.0 * std::numbers::pi * std::generate_canonical<double, 64>(rng);
        double h = 1.0 - 2.0 * u;
        out.emplace_back(std::polar(std::sqrt(1.0 + h), -phi), Complex(std::sqrt(1.0 - h)));
    }
    return out;
}

double ks_uniform(std::span<const double> samples) {
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double f = std::clamp(x[i], 0.0, 1.0);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

}  // namespace qqbf
