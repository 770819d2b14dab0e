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

#include "qqbf/blocks.hpp"

#include <cmath>
#include <stdexcept>

namespace qqbf {

std::string_view to_string(ProductBranch branch) {
    return branch == ProductBranch::Plus ? "plus" : "minus";
}

std::string_view to_string(SumBranch branch) {
    return branch == SumBranch::Arithmetic ? "S" : "I";
}

const DensityMatrix2 &BlockOutcome::require_state() const {
    if (!state) {
        throw IndefiniteError("block output is indefinite (zero success probability)");
    }
    return *state;
}

const Coin &BlockOutcome::require_coin() const {
    if (!ideal_coin) {
        throw IndefiniteError("block output is indefinite (zero success probability)");
    }
    return *ideal_coin;
}

Coin invert(const Coin &c) {
    return Coin(c.b(), c.a());
}

namespace {

double sign_of(ProductBranch branch) {
    return branch == ProductBranch::Plus ? 1.0 : -1.0;
}

std::optional<Coin> make_coin(Complex a, Complex b) {
    if (a == Complex{} && b == Complex{}) {
        return std::nullopt;
    }
    return Coin(a, b);
}

BlockOutcome finish(const DensityMatrix2::Entries &unnormalized, double prob_scale,
                    std::optional<Coin> ideal) {
    double tr = unnormalized[0].real() + unnormalized[3].real();
    if (!ideal || !(tr >= numeric_policy().indefinite_trace)) {
        return BlockOutcome::make_indefinite();
    }
    BlockOutcome out;
    out.state = DensityMatrix2::from_unnormalized(unnormalized);
    out.success_prob = tr * prob_scale;
    out.ideal_coin = ideal->normalized();
    return out;
}

}  // namespace

std::optional<Coin> ideal_product(const Coin &c1, const Coin &c2, ProductBranch branch) {
    Coin u = c1.normalized();
    Coin w = c2.normalized();
    return make_coin(sign_of(branch) * u.a() * w.a(), u.b() * w.b());
}

std::optional<Coin> ideal_sum(const Coin &c1, const Coin &c2, SumBranch branch) {
    Coin u = c1.normalized();
    Coin w = c2.normalized();
    Complex cross = u.a() * w.b() + w.a() * u.b();
    if (branch == SumBranch::Arithmetic) {
        return make_coin(cross, 2.0 * u.b() * w.b());
    }
    return make_coin(2.0 * u.a() * w.a(), cross);
}

double product_success_prob(const Coin &c1, const Coin &c2) {
    double num = std::norm(c1.a() * c2.a()) + std::norm(c1.b() * c2.b());
    return num / (2.0 * c1.norm2() * c2.norm2());
}

BlockOutcome product_output(const Coin &c1, const Coin &c2, ProductBranch branch, Visibility v) {
    Coin u = c1.normalized();
    Coin w = c2.normalized();
    Complex top = u.a() * w.a();
    Complex bottom = u.b() * w.b();
    Complex off = sign_of(branch) * v.value() * top * std::conj(bottom);
    DensityMatrix2::Entries m{Complex{std::norm(top)}, off, std::conj(off), Complex{std::norm(bottom)}};
    return finish(m, 0.5, ideal_product(u, w, branch));
}

double sum_success_prob(const Coin &c1, const Coin &c2, SumBranch branch) {
    Complex cross = c1.a() * c2.b() + c2.a() * c1.b();
    double pole = branch == SumBranch::Arithmetic ? std::norm(c1.b() * c2.b()) : std::norm(c1.a() * c2.a());
    return (std::norm(cross) + 4.0 * pole) / (16.0 * c1.norm2() * c2.norm2());
}

BlockOutcome sum_output(const Coin &c1, const Coin &c2, SumBranch branch, Visibility v) {
    Coin u = c1.normalized();
    Coin w = c2.normalized();
    double vis = v.value();
    // z1 -> a1 b2 and z2 -> a2 b1 after clearing the denominators b1 b2.
    Complex x1 = u.a() * w.b();
    Complex x2 = w.a() * u.b();
    Complex cross = x1 + x2;
    double partial = std::norm(cross) - 2.0 * (1.0 - vis) * (x1 * std::conj(x2)).real();

    DensityMatrix2::Entries m;
    if (branch == SumBranch::Arithmetic) {
        Complex bb = u.b() * w.b();
        Complex off = (1.0 + vis) * cross * std::conj(bb);
        m = {Complex{partial}, off, std::conj(off), Complex{2.0 * (1.0 + vis) * std::norm(bb)}};
    } else {
        Complex aa = u.a() * w.a();
        Complex off = (1.0 + vis) * aa * std::conj(cross);
        m = {Complex{2.0 * (1.0 + vis) * std::norm(aa)}, off, std::conj(off), Complex{partial}};
    }
    return finish(m, 1.0 / 16.0, ideal_sum(u, w, branch));
}

double prob_bound_product(double r) {
    if (r < 0) {
        throw std::invalid_argument("radius must be non-negative");
    }
    return 0.5 * r * r;
}

double prob_bound_sum(double r) {
    if (r < 0) {
        throw std::invalid_argument("radius must be non-negative");
    }
    return r * r / 16.0 * (3.0 + 4.0 * r * r);
}

}  // namespace qqbf
