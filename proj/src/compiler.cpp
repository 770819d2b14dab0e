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

#include "qqbf/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qqbf {

namespace {

constexpr double kRootMatchTol = 1e-7;
constexpr int kMaxIterations = 500;
constexpr double kStepTol = 1e-14;
constexpr double kResidualTol = 1e-8;

std::vector<Complex> trimmed(std::span<const Complex> coeffs) {
    std::vector<Complex> out(coeffs.begin(), coeffs.end());
    while (!out.empty() && out.back() == Complex{}) {
        out.pop_back();
    }
    return out;
}

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

// sum c[i] a^i b^(deg - i), evaluated stably for either |a| or |b| small.
Complex homogeneous(std::span<const Complex> coeffs, std::size_t deg, Complex a, Complex b) {
    Complex acc{};
    Complex apow = 1.0;
    for (std::size_t i = 0; i <= deg; ++i) {
        Complex c = i < coeffs.size() ? coeffs[i] : Complex{};
        if (c != Complex{}) {
            acc += c * apow * std::pow(b, static_cast<int>(deg - i));
        }
        apow *= a;
    }
    return acc;
}

void require_finite(std::span<const Complex> coeffs) {
    for (auto c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("coefficients must be finite");
        }
    }
}

}  // namespace

std::vector<Complex> expand_roots(Complex leading, std::span<const Complex> roots) {
    std::vector<Complex> poly{leading};
    for (auto r : roots) {
        std::vector<Complex> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= r * poly[i];
        }
        poly = std::move(next);
    }
    return poly;
}

RationalFunction expand(const FactoredRational &f) {
    return {expand_roots(f.c0, f.zeros), expand_roots(1.0, f.poles)};
}

std::optional<Coin> evaluate_rational(const RationalFunction &f, const Coin &z) {
    auto num = trimmed(f.num);
    auto den = trimmed(f.den);
    if (den.empty()) {
        throw std::invalid_argument("denominator is identically zero");
    }
    if (num.empty()) {
        return Coin::from_complex(0.0);
    }
    std::size_t deg = std::max(num.size(), den.size()) - 1;
    Coin u = z.normalized();
    Complex p = homogeneous(num, deg, u.a(), u.b());
    Complex q = homogeneous(den, deg, u.a(), u.b());
    if (p == Complex{} && q == Complex{}) {
        return std::nullopt;
    }
    return Coin(p, q);
}

Factorization factor_polynomial(std::span<const Complex> coeffs) {
    require_finite(coeffs);
    auto poly = trimmed(coeffs);
    if (poly.empty()) {
        throw std::invalid_argument("polynomial is identically zero");
    }
    Factorization out{poly.back(), {}};
    std::size_t zero_roots = 0;
    while (poly[zero_roots] == Complex{}) {
        ++zero_roots;
    }
    std::vector<Complex> monic(poly.begin() + static_cast<std::ptrdiff_t>(zero_roots), poly.end());
    for (auto &c : monic) {
        c /= out.leading;
    }
    const std::size_t deg = monic.size() - 1;

    std::vector<Complex> z(deg);
    Complex seed(0.4, 0.9);
    Complex power = 1.0;
    for (auto &zi : z) {
        zi = power;
        power *= seed;
    }
    for (int iter = 0; iter < kMaxIterations && deg > 0; ++iter) {
        bool converged = true;
        for (std::size_t i = 0; i < deg; ++i) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < deg; ++j) {
                if (j != i) {
                    Complex diff = z[i] - z[j];
                    denom *= diff == Complex{} ? Complex(1e-300, 0) : diff;
                }
            }
            Complex step = horner(monic, z[i]) / denom;
            z[i] -= step;
            if (std::abs(step) > kStepTol * (1.0 + std::abs(z[i]))) {
                converged = false;
            }
        }
        if (converged) {
            break;
        }
    }

    double scale = 0;
    for (auto c : poly) {
        scale = std::max(scale, std::abs(c));
    }
    std::ostringstream bad;
    for (auto r : z) {
        double residual = std::abs(horner(poly, r));
        double allowed = kResidualTol * scale * std::pow(1.0 + std::abs(r), static_cast<double>(poly.size() - 1));
        if (!(residual <= allowed)) {
            bad << " |p(" << r.real() << (r.imag() < 0 ? "" : "+") << r.imag() << "i)|=" << residual;
        }
    }
    if (!bad.str().empty()) {
        throw std::runtime_error("root finder did not converge:" + bad.str());
    }
    out.roots.assign(zero_roots, Complex{});
    out.roots.insert(out.roots.end(), z.begin(), z.end());
    return out;
}

namespace {

class CircuitBuilder {
   public:
    explicit CircuitBuilder(std::size_t n_data) : n_data_(n_data) {}

    WireRef reg(const Coin &c) {
        registers_.push_back(c);
        return WireRef::reg(registers_.size() - 1);
    }

    WireRef node(BlockKind kind, std::vector<WireRef> inputs) {
        nodes_.push_back({kind, std::move(inputs)});
        return WireRef::node(nodes_.size() - 1);
    }

    BlockCircuit finish(WireRef output) && {
        return BlockCircuit(n_data_, std::move(registers_), std::move(nodes_), output);
    }

   private:
    std::size_t n_data_;
    std::vector<Coin> registers_;
    std::vector<CircuitNode> nodes_;
};

// A folded value: a constant, or factor * (some wire of the new circuit).
struct Folded {
    std::optional<WireRef> wire;
    Complex factor = 1.0;
};

bool foldable(const Coin &c) {
    auto v = c.value();
    return v && *v != Complex{} && std::isfinite(v->real()) && std::isfinite(v->imag());
}

}  // namespace

BlockCircuit fold_constants(const BlockCircuit &circuit) {
    CircuitBuilder out(circuit.n_data_inputs());
    std::vector<Folded> values(circuit.nodes().size());

    auto leaf = [&](const WireRef &w) -> Folded {
        switch (w.source) {
            case WireRef::Source::Data:
                return {w, 1.0};
            case WireRef::Source::Register: {
                const Coin &c = circuit.registers()[w.index];
                if (foldable(c)) {
                    return {std::nullopt, *c.value()};
                }
                return {out.reg(c), 1.0};
            }
            case WireRef::Source::Node:
                break;
        }
        return values[w.index];
    };
    auto materialize = [&](const Folded &f) -> WireRef {
        if (!f.wire) {
            return out.reg(Coin::from_complex(f.factor));
        }
        if (f.factor == Complex(1.0)) {
            return *f.wire;
        }
        return out.node(BlockKind::Product, {*f.wire, out.reg(Coin::from_complex(f.factor))});
    };

    for (std::size_t i = 0; i < circuit.nodes().size(); ++i) {
        const auto &node = circuit.nodes()[i];
        if (node.kind == BlockKind::Invert) {
            Folded x = leaf(node.inputs[0]);
            values[i] = x.wire ? Folded{out.node(BlockKind::Invert, {*x.wire}), 1.0 / x.factor}
                               : Folded{std::nullopt, 1.0 / x.factor};
        } else if (is_product(node.kind)) {
            Folded x = leaf(node.inputs[0]);
            Folded y = leaf(node.inputs[1]);
            Complex factor = x.factor * y.factor * (node.kind == BlockKind::Antiproduct ? -1.0 : 1.0);
            if (x.wire && y.wire) {
                values[i] = {out.node(BlockKind::Product, {*x.wire, *y.wire}), factor};
            } else {
                values[i] = {x.wire ? x.wire : y.wire, factor};
            }
        } else {
            WireRef x = materialize(leaf(node.inputs[0]));
            WireRef y = materialize(leaf(node.inputs[1]));
            values[i] = {out.node(node.kind, {x, y}), 1.0};
        }
    }
    WireRef output = materialize(leaf(circuit.output()));
    return std::move(out).finish(output);
}

namespace {

CompilationReport report_for(BlockCircuit circuit, std::size_t degree, std::vector<std::string> warnings,
                             bool degenerate) {
    CompilationReport r{std::move(circuit), 0, 0, 0, 0, 0, {}, false};
    r.op_count = r.circuit.op_count();
    r.degree = degree;
    r.bound = 4 * degree;
    r.photons_data = r.circuit.n_data_inputs();
    r.photons_register = r.circuit.registers().size();
    r.warnings = std::move(warnings);
    r.degenerate = degenerate;
    return r;
}

std::string format_root(Complex r) {
    std::ostringstream os;
    os << r.real() << (r.imag() < 0 ? "" : "+") << r.imag() << "i";
    return os.str();
}

CompilationReport build(Complex c0, std::vector<Complex> zeros, std::vector<Complex> poles,
                        std::vector<std::string> warnings) {
    for (std::size_t i = 0; i < zeros.size();) {
        auto match = std::find_if(poles.begin(), poles.end(), [&](Complex q) {
            return std::abs(zeros[i] - q) <= kRootMatchTol * std::max(1.0, std::abs(zeros[i]));
        });
        if (match != poles.end()) {
            warnings.push_back("cancelled common root " + format_root(zeros[i]));
            poles.erase(match);
            zeros.erase(zeros.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    std::size_t degree = std::max(zeros.size(), poles.size());

    CircuitBuilder b(zeros.size() + poles.size());
    std::size_t next_data = 0;
    // z - r as the mean of z and -r, rescaled by 2.
    auto factor = [&](Complex root) {
        WireRef z = WireRef::data(next_data++);
        if (root == Complex{}) {
            return z;
        }
        WireRef mean = b.node(BlockKind::ArithmeticMean, {z, b.reg(Coin::from_complex(-root))});
        return b.node(BlockKind::Product, {mean, b.reg(Coin::from_complex(2.0))});
    };
    auto chain = [&](const std::vector<Complex> &roots) -> std::optional<WireRef> {
        std::optional<WireRef> acc;
        for (auto r : roots) {
            WireRef w = factor(r);
            acc = acc ? b.node(BlockKind::Product, {*acc, w}) : w;
        }
        return acc;
    };
    std::optional<WireRef> num = chain(zeros);
    std::optional<WireRef> den = chain(poles);
    if (den) {
        den = b.node(BlockKind::Invert, {*den});
    }
    std::optional<WireRef> body = num;
    if (num && den) {
        body = b.node(BlockKind::Product, {*num, *den});
    } else if (den) {
        body = den;
    }
    WireRef scale = b.reg(Coin::from_complex(c0));
    WireRef output = body ? b.node(BlockKind::Product, {*body, scale}) : scale;
    return report_for(fold_constants(std::move(b).finish(output)), degree, std::move(warnings), false);
}

}  // namespace

CompilationReport compile_factored(const FactoredRational &f) {
    require_finite(std::span<const Complex>(&f.c0, 1));
    require_finite(f.zeros);
    require_finite(f.poles);
    if (f.c0 == Complex{}) {
        BlockCircuit zero(0, {Coin::from_complex(0.0)}, {}, WireRef::reg(0));
        return report_for(std::move(zero), 0, {"numerator is identically zero"}, true);
    }
    return build(f.c0, f.zeros, f.poles, {});
}

CompilationReport compile_rational(const RationalFunction &f) {
    if (f.num.empty() || f.den.empty()) {
        throw std::invalid_argument("rational function needs numerator and denominator coefficients");
    }
    require_finite(f.num);
    require_finite(f.den);
    auto den = trimmed(f.den);
    if (den.empty()) {
        throw std::invalid_argument("denominator is identically zero");
    }
    auto num = trimmed(f.num);
    if (num.empty()) {
        BlockCircuit zero(0, {Coin::from_complex(0.0)}, {}, WireRef::reg(0));
        return report_for(std::move(zero), 0, {"numerator is identically zero"}, true);
    }
    Factorization p = factor_polynomial(num);
    Factorization q = factor_polynomial(den);
    return build(p.leading / q.leading, std::move(p.roots), std::move(q.roots), {});
}

double circuit_cost(const BlockCircuit &circuit, const Coin &z) {
    std::vector<Coin> data(circuit.n_data_inputs(), z);
    return evaluate_ideal(circuit, data).success_prob;
}

}  // namespace qqbf
