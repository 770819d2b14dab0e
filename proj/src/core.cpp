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

#include "qqbf/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qqbf {

namespace {

NumericPolicy g_policy;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

const NumericPolicy &numeric_policy() {
    return g_policy;
}

void set_numeric_policy(const NumericPolicy &policy) {
    g_policy = policy;
}

Coin::Coin(Complex a, Complex b) : a_(a), b_(b) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag())) {
        throw std::invalid_argument("coin amplitudes must be finite");
    }
    if (a == Complex{} && b == Complex{}) {
        throw std::invalid_argument("coin amplitudes (0, 0) do not define a point");
    }
}

bool Coin::is_infinite() const {
    return std::abs(b_) <= 1e-15 * std::abs(a_);
}

std::optional<Complex> Coin::value() const {
    if (is_infinite()) {
        return std::nullopt;
    }
    return a_ / b_;
}

Coin Coin::normalized() const {
    double n = std::sqrt(norm2());
    double mb = std::abs(b_);
    if (mb > 0) {
        Complex phase = std::conj(b_) / mb;
        return Coin(a_ * phase / n, mb / n);
    }
    return Coin(std::abs(a_) / n, 0.0);
}

double projective_distance(const Coin &c1, const Coin &c2) {
    double cross = std::abs(c1.a() * c2.b() - c2.a() * c1.b());
    return cross / std::sqrt(c1.norm2() * c2.norm2());
}

bool projectively_equal(const Coin &c1, const Coin &c2) {
    return projectively_equal(c1, c2, numeric_policy().projective_tol);
}

bool projectively_equal(const Coin &c1, const Coin &c2, double tol) {
    return projective_distance(c1, c2) <= tol;
}

std::string to_string(const Coin &c) {
    std::ostringstream out;
    out.precision(12);
    auto z = c.value();
    if (!z) {
        out << "inf";
        return out.str();
    }
    out << z->real() << (z->imag() < 0 ? "-" : "+") << std::abs(z->imag()) << "i";
    return out.str();
}

double bias(const Coin &c) {
    return std::norm(c.b()) / c.norm2();
}

Visibility::Visibility(double v) : v_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

namespace detail {

HermitianEigen2 hermitian_eigen(const DensityMatrix2::Entries &m) {
    double p = m[0].real();
    double s = m[3].real();
    Complex q = m[1];
    double mid = 0.5 * (p + s);
    double d = 0.5 * (p - s);
    double r = std::hypot(d, std::abs(q));

    HermitianEigen2 out;
    out.values = {mid - r, mid + r};
    if (r == 0.0) {
        out.vectors[0] = {Complex{0.0}, Complex{1.0}};
        out.vectors[1] = {Complex{1.0}, Complex{0.0}};
        return out;
    }
    // Eigenvector of the upper eigenvalue; the branch keeps the big component away from cancellation.
    std::array<Complex, 2> upper;
    if (d >= 0) {
        upper = {Complex{d + r}, std::conj(q)};
    } else {
        upper = {q, Complex{r - d}};
    }
    double n = std::sqrt(std::norm(upper[0]) + std::norm(upper[1]));
    upper[0] /= n;
    upper[1] /= n;
    out.vectors[1] = upper;
    out.vectors[0] = {-std::conj(upper[1]), std::conj(upper[0])};
    return out;
}

}  // namespace detail

namespace {

DensityMatrix2::Entries hermitize(const DensityMatrix2::Entries &m) {
    Complex off = 0.5 * (m[1] + std::conj(m[2]));
    return {Complex{m[0].real()}, off, std::conj(off), Complex{m[3].real()}};
}

}  // namespace

DensityMatrix2 DensityMatrix2::from_entries(const Entries &m) {
    const auto &policy = numeric_policy();
    for (const auto &e : m) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw std::invalid_argument("density matrix has non-finite entries");
        }
    }
    if (std::abs(m[1] - std::conj(m[2])) > policy.trace_tol || std::abs(m[0].imag()) > policy.trace_tol ||
        std::abs(m[3].imag()) > policy.trace_tol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    Entries h = hermitize(m);
    double tr = h[0].real() + h[3].real();
    if (std::abs(tr - 1.0) > policy.trace_tol) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    auto eig = detail::hermitian_eigen(h);
    if (eig.values[0] < -policy.psd_tol) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
    return DensityMatrix2(h);
}

DensityMatrix2 DensityMatrix2::from_unnormalized(const Entries &m) {
    Entries h = hermitize(m);
    double tr = h[0].real() + h[3].real();
    if (!(tr >= numeric_policy().indefinite_trace)) {
        throw IndefiniteError("unnormalized output has vanishing trace");
    }
    for (auto &e : h) {
        e /= tr;
    }
    return from_entries(h);
}

DensityMatrix2 DensityMatrix2::maximally_mixed() {
    return DensityMatrix2({Complex{0.5}, Complex{}, Complex{}, Complex{0.5}});
}

DensityMatrix2 DensityMatrix2::from_bloch(const BlochVector &r) {
    Complex off{0.5 * r.x, -0.5 * r.y};
    return from_entries({Complex{0.5 * (1 + r.z)}, off, std::conj(off), Complex{0.5 * (1 - r.z)}});
}

std::array<double, 2> DensityMatrix2::eigenvalues() const {
    return detail::hermitian_eigen(m_).values;
}

double DensityMatrix2::purity() const {
    double sum = 0;
    for (const auto &e : m_) {
        sum += std::norm(e);
    }
    return sum;
}

BlochVector DensityMatrix2::bloch() const {
    return {2.0 * m_[1].real(), -2.0 * m_[1].imag(), m_[0].real() - m_[3].real()};
}

DensityMatrix2 coin_density(const Coin &c) {
    double n = c.norm2();
    Complex a = c.a();
    Complex b = c.b();
    Complex off = a * std::conj(b) / n;
    return DensityMatrix2::from_entries({Complex{std::norm(a) / n}, off, std::conj(off), Complex{std::norm(b) / n}});
}

double fidelity(const DensityMatrix2 &rho, const DensityMatrix2 &sigma) {
    // Qubit closed form: (sqrt l1 + sqrt l2)^2 of rho^1/2 sigma rho^1/2 is
    // Tr(rho sigma) + 2 sqrt(det rho det sigma). A determinant at rounding
    // level is a pure state; keeping its sqrt would cost ~1e-8 accuracy.
    auto det = [](const DensityMatrix2 &m) {
        double d = (m(0, 0) * m(1, 1)).real() - std::norm(m(0, 1));
        return d <= 64 * std::numeric_limits<double>::epsilon() ? 0.0 : d;
    };
    double overlap = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            overlap += (rho(i, k) * sigma(k, i)).real();
        }
    }
    return std::clamp(overlap + 2.0 * std::sqrt(det(rho) * det(sigma)), 0.0, 1.0);
}

DensityMatrix2 swap_hv(const DensityMatrix2 &rho) {
    const auto &m = rho.entries();
    return DensityMatrix2::from_entries({m[3], m[2], m[1], m[0]});
}

double max_abs_diff(const DensityMatrix2 &x, const DensityMatrix2 &y) {
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(x.entries()[i] - y.entries()[i]));
    }
    return worst;
}

BlochPoint coin_to_bloch(const Coin &c) {
    double ma = std::abs(c.a());
    double mb = std::abs(c.b());
    double theta = 2.0 * std::atan2(mb, ma);
    double phi = 0.0;
    if (ma > 0 && mb > 0) {
        phi = std::arg(c.b()) - std::arg(c.a());
        phi = std::fmod(phi, kTwoPi);
        if (phi < 0) {
            phi += kTwoPi;
        }
        if (phi >= kTwoPi) {
            phi -= kTwoPi;
        }
    }
    return {theta, phi};
}

Coin bloch_to_coin(const BlochPoint &p) {
    return Coin(std::cos(0.5 * p.theta), std::sin(0.5 * p.theta) * std::polar(1.0, p.phi));
}

BlochVector to_vector(const BlochPoint &p) {
    return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi), std::cos(p.theta)};
}

}  // namespace qqbf
