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

#include "qqbf/fock_oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace qqbf {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI(0.0, 1.0);

}  // namespace

LinearNetwork::LinearNetwork(std::size_t spatial) : spatial_(0) {
    for (std::size_t i = 0; i < spatial; ++i) {
        add_mode();
    }
}

std::size_t LinearNetwork::add_mode() {
    std::size_t old_dim = dim();
    std::size_t new_dim = old_dim + 2;
    std::vector<Complex> grown(new_dim * new_dim);
    for (std::size_t r = 0; r < old_dim; ++r) {
        for (std::size_t c = 0; c < old_dim; ++c) {
            grown[r * new_dim + c] = u_[r * old_dim + c];
        }
    }
    grown[old_dim * new_dim + old_dim] = 1.0;
    grown[(old_dim + 1) * new_dim + old_dim + 1] = 1.0;
    u_ = std::move(grown);
    return spatial_++;
}

void LinearNetwork::apply(std::size_t s1, std::size_t s2, const std::array<Complex, 16> &g) {
    if (s1 >= spatial_ || s2 >= spatial_ || s1 == s2) {
        throw std::invalid_argument("two distinct existing spatial modes required");
    }
    const std::size_t rows[4] = {2 * s1, 2 * s1 + 1, 2 * s2, 2 * s2 + 1};
    const std::size_t n = dim();
    for (std::size_t c = 0; c < n; ++c) {
        Complex old[4];
        for (int j = 0; j < 4; ++j) {
            old[j] = u_[rows[j] * n + c];
        }
        for (int i = 0; i < 4; ++i) {
            Complex acc{};
            for (int j = 0; j < 4; ++j) {
                acc += g[4 * i + j] * old[j];
            }
            u_[rows[i] * n + c] = acc;
        }
    }
}

void LinearNetwork::beam_splitter(std::size_t x, std::size_t y) {
    const Complex t = kInvSqrt2;
    const Complex r = kI * kInvSqrt2;
    // Basis order (xH, xV, yH, yV); polarization is untouched.
    apply(x, y, {t, 0, r, 0,  //
                 0, t, 0, r,  //
                 r, 0, t, 0,  //
                 0, r, 0, t});
}

void LinearNetwork::polarizing_beam_splitter(std::size_t x, std::size_t y) {
    apply(x, y, {1, 0, 0, 0,   //
                 0, 0, 0, kI,  //
                 0, 0, 1, 0,   //
                 0, kI, 0, 0});
}

void LinearNetwork::waveplate(std::size_t s, const std::array<Complex, 4> &m) {
    if (s >= spatial_) {
        throw std::invalid_argument("spatial mode out of range");
    }
    const std::size_t n = dim();
    for (std::size_t c = 0; c < n; ++c) {
        Complex h = u_[2 * s * n + c];
        Complex v = u_[(2 * s + 1) * n + c];
        u_[2 * s * n + c] = m[0] * h + m[1] * v;
        u_[(2 * s + 1) * n + c] = m[2] * h + m[3] * v;
    }
}

double LinearNetwork::unitarity_error() const {
    const std::size_t n = dim();
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) {
                acc += std::conj(u_[k * n + i]) * u_[k * n + j];
            }
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double FockState::norm2() const {
    double total = 0;
    for (const auto &[occ, amp] : amplitudes) {
        total += std::norm(amp);
    }
    return total;
}

FockState evolve(const LinearNetwork &net, std::span<const InputPhoton> photons, std::size_t labels) {
    FockState state;
    state.basis = {net.spatial(), labels};
    const std::size_t n = net.dim();

    std::vector<std::vector<Complex>> images;
    for (const auto &p : photons) {
        if (p.spatial >= net.spatial() || p.label >= labels) {
            throw std::invalid_argument("input photon outside the mode basis");
        }
        Coin c = p.polarization.normalized();
        std::vector<Complex> img(n);
        for (std::size_t r = 0; r < n; ++r) {
            img[r] = net(r, 2 * p.spatial) * c.a() + net(r, 2 * p.spatial + 1) * c.b();
        }
        images.push_back(std::move(img));
    }

    std::vector<std::uint8_t> occ(state.basis.dim(), 0);
    std::function<void(std::size_t, Complex)> place = [&](std::size_t j, Complex amp) {
        if (j == photons.size()) {
            state.amplitudes[occ] += amp;
            return;
        }
        for (std::size_t r = 0; r < n; ++r) {
            Complex phi = images[j][r];
            if (phi == Complex{}) {
                continue;
            }
            std::size_t idx = r * labels + photons[j].label;
            ++occ[idx];
            place(j + 1, amp * phi);
            --occ[idx];
        }
    };
    place(0, 1.0);

    // a^dag ... a^dag |0> = sqrt(prod n!) |n>.
    for (auto &[o, amp] : state.amplitudes) {
        double f = 1;
        for (auto k : o) {
            for (int i = 2; i <= k; ++i) {
                f *= i;
            }
        }
        amp *= std::sqrt(f);
    }
    return state;
}

std::vector<MixtureComponent> uniform_visibility_mixture(std::size_t photons, Visibility v) {
    const double vis = v.value();
    switch (photons) {
        case 1:
            return {{1.0, {0}}};
        case 2:
            return {{vis, {0, 0}}, {1.0 - vis, {0, 1}}};
        case 3: {
            double p1 = std::pow(vis, 1.5);
            double p2 = vis - p1;
            double p3 = 1.0 - 3.0 * vis + 2.0 * p1;
            return {{p1, {0, 0, 0}}, {p2, {0, 0, 1}}, {p2, {0, 1, 0}}, {p2, {1, 0, 0}}, {p3, {0, 1, 2}}};
        }
        default:
            throw std::invalid_argument("unsupported photon number " + std::to_string(photons) +
                                        " (the oracle handles 1 to 3 photons)");
    }
}

OpticalLayout layout_circuit(const BlockCircuit &circuit, std::span<const Coin> data) {
    if (data.size() != circuit.n_data_inputs()) {
        throw std::invalid_argument("expected " + std::to_string(circuit.n_data_inputs()) + " data coins");
    }
    OpticalLayout out;
    std::vector<std::size_t> node_mode(circuit.nodes().size());
    auto resolve = [&](const WireRef &w) -> std::size_t {
        if (w.source == WireRef::Source::Node) {
            return node_mode[w.index];
        }
        std::size_t s = out.network.add_mode();
        const Coin &c = w.source == WireRef::Source::Data ? data[w.index] : circuit.registers()[w.index];
        out.photons.push_back({s, c, 0});
        return s;
    };

    const std::array<Complex, 4> swap_hv{0, 1, 1, 0};
    const std::array<Complex, 4> flip_v{1, 0, 0, -1};
    const std::array<Complex, 4> hadamard{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    for (std::size_t i = 0; i < circuit.nodes().size(); ++i) {
        const auto &node = circuit.nodes()[i];
        std::size_t x = resolve(node.inputs[0]);
        if (node.kind == BlockKind::Invert) {
            out.network.waveplate(x, swap_hv);
        } else if (is_product(node.kind)) {
            std::size_t y = resolve(node.inputs[1]);
            out.network.polarizing_beam_splitter(x, y);
            out.network.waveplate(x, flip_v);
            out.network.waveplate(y, hadamard);
            out.heralds.emplace_back(y, node.kind == BlockKind::Product ? 0 : 1);
        } else {
            std::size_t y = resolve(node.inputs[1]);
            std::size_t f = out.network.add_mode();
            out.network.beam_splitter(x, y);
            out.network.beam_splitter(x, f);
            out.heralds.emplace_back(f, node.kind == BlockKind::ArithmeticMean ? 1 : 0);
        }
        node_mode[i] = x;
    }
    out.output_mode = resolve(circuit.output());
    return out;
}

namespace {

struct Photon {
    int pol;
    std::size_t label;
};

// Photons found in one spatial mode of an occupation vector.
std::vector<Photon> photons_in(const ModeBasis &basis, const std::vector<std::uint8_t> &occ, std::size_t s) {
    std::vector<Photon> out;
    for (int p = 0; p < 2; ++p) {
        for (std::size_t l = 0; l < basis.labels; ++l) {
            for (int k = 0; k < occ[basis.index(s, p, l)]; ++k) {
                out.push_back({p, l});
            }
        }
    }
    return out;
}

// One photon in the output and in every herald mode, nothing anywhere else.
bool geometry_ok(const OpticalLayout &layout, const ModeBasis &basis, const std::vector<std::uint8_t> &occ) {
    std::vector<int> required(basis.spatial, 0);
    required[layout.output_mode] = 1;
    for (const auto &[mode, pol] : layout.heralds) {
        required[mode] = 1;
    }
    for (std::size_t s = 0; s < basis.spatial; ++s) {
        if (photons_in(basis, occ, s).size() != static_cast<std::size_t>(required[s])) {
            return false;
        }
    }
    return true;
}

OpticalLayout labelled(OpticalLayout layout, std::span<const std::size_t> labels) {
    if (labels.size() != layout.photons.size()) {
        throw std::invalid_argument("one label per photon required");
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
        layout.photons[j].label = labels[j];
    }
    return layout;
}

std::size_t label_count(std::span<const std::size_t> labels) {
    std::size_t top = 0;
    for (auto l : labels) {
        top = std::max(top, l);
    }
    return top + 1;
}

}  // namespace

BlockOutcome simulate_circuit(const BlockCircuit &circuit, std::span<const Coin> data, Visibility v) {
    OpticalLayout base = layout_circuit(circuit, data);
    auto mixture = uniform_visibility_mixture(base.photons.size(), v);

    DensityMatrix2::Entries total{};
    for (const auto &comp : mixture) {
        if (comp.weight == 0.0) {
            continue;
        }
        OpticalLayout layout = labelled(base, comp.labels);
        FockState state = evolve(layout.network, layout.photons, label_count(comp.labels));

        // Herald photons are detected without resolving labels, so their
        // labels join the traced-out environment.
        std::map<std::vector<std::uint8_t>, std::array<Complex, 2>> branches;
        for (const auto &[occ, amp] : state.amplitudes) {
            if (!geometry_ok(layout, state.basis, occ)) {
                continue;
            }
            bool heralded = true;
            for (const auto &[mode, pol] : layout.heralds) {
                heralded = heralded && photons_in(state.basis, occ, mode)[0].pol == pol;
            }
            if (!heralded) {
                continue;
            }
            Photon kept = photons_in(state.basis, occ, layout.output_mode)[0];
            std::vector<std::uint8_t> env = occ;
            env[state.basis.index(layout.output_mode, kept.pol, kept.label)] = 0;
            env.push_back(static_cast<std::uint8_t>(kept.label));
            branches[env][static_cast<std::size_t>(kept.pol)] += amp;
        }
        for (const auto &[env, vec] : branches) {
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    total[2 * r + c] += comp.weight * vec[r] * std::conj(vec[c]);
                }
            }
        }
    }

    double tr = total[0].real() + total[3].real();
    std::optional<Coin> ideal = evaluate_ideal(circuit, data).coin;
    if (!ideal || !(tr >= numeric_policy().indefinite_trace)) {
        return BlockOutcome::make_indefinite();
    }
    BlockOutcome out;
    out.state = DensityMatrix2::from_unnormalized(total);
    out.success_prob = tr;
    out.ideal_coin = ideal->normalized();
    return out;
}

BlockOutcome oracle_block(BlockKind kind, const Coin &z1, const Coin &z2, Visibility v) {
    if (kind == BlockKind::Invert) {
        BlockCircuit c(1, {}, {{kind, {WireRef::data(0)}}}, WireRef::node(0));
        const Coin data[] = {z1};
        return simulate_circuit(c, data, v);
    }
    BlockCircuit c(2, {}, {{kind, {WireRef::data(0), WireRef::data(1)}}}, WireRef::node(0));
    const Coin data[] = {z1, z2};
    return simulate_circuit(c, data, v);
}

BlockOutcome oracle_chain3(const Coin &z1, const Coin &z2, const Coin &z3, ChainCombo combo, Visibility v) {
    const Coin data[] = {z1, z2, z3};
    return simulate_circuit(concat3_circuit(combo), data, v);
}

TriggerDistribution trigger_distribution(const BlockCircuit &circuit, std::span<const Coin> data,
                                         std::span<const std::size_t> labels) {
    OpticalLayout layout = labelled(layout_circuit(circuit, data), labels);
    FockState state = evolve(layout.network, layout.photons, label_count(labels));
    TriggerDistribution out;
    out.triggers.assign(std::size_t{1} << layout.heralds.size(), 0.0);
    for (const auto &[occ, amp] : state.amplitudes) {
        double p = std::norm(amp);
        if (!geometry_ok(layout, state.basis, occ)) {
            out.rejected += p;
            continue;
        }
        std::size_t bits = 0;
        for (std::size_t h = 0; h < layout.heralds.size(); ++h) {
            const auto &[mode, pol] = layout.heralds[h];
            if (photons_in(state.basis, occ, mode)[0].pol != pol) {
                bits |= std::size_t{1} << h;
            }
        }
        out.triggers[bits] += p;
    }
    return out;
}

}  // namespace qqbf
