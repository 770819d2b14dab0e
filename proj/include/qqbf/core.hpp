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

#ifndef QQBF_CORE_HPP
#define QQBF_CORE_HPP

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace qqbf {

using Complex = std::complex<double>;

/// Process-wide numeric tolerances. Read through numeric_policy(); replace
/// with set_numeric_policy() before any evaluation starts.
struct NumericPolicy {
    double projective_tol = 1e-9;   // normalized cross-term |a1 b2 - a2 b1|
    double trace_tol = 1e-12;       // |Tr rho - 1|
    double psd_tol = 1e-12;         // smallest allowed eigenvalue is -psd_tol
    double indefinite_trace = 1e-15;  // unnormalized trace below this => indefinite
};

const NumericPolicy &numeric_policy();
void set_numeric_policy(const NumericPolicy &policy);

/// Raised by single-evaluation APIs when a field operation has no value
/// (0*inf, inf+inf and friends).
class IndefiniteError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A quantum coin |z> ~ z|H> + |V> stored homogeneously as (a, b) with z = a/b.
/// z = inf is (a != 0, b = 0); z = 0 is (a = 0, b != 0). (0, 0) is rejected.
class Coin {
   public:
    Coin(Complex a, Complex b);

    static Coin from_complex(Complex z) { return Coin(z, 1.0); }
    static Coin infinity() { return Coin(1.0, 0.0); }

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    double norm2() const { return std::norm(a_) + std::norm(b_); }

    bool is_infinite() const;
    /// z = a/b, or nullopt at infinity.
    std::optional<Complex> value() const;

    /// Unit-norm representative with b real and non-negative (a real
    /// positive at infinity). Used for display and for numerics.
    Coin normalized() const;

   private:
    Complex a_;
    Complex b_;
};

/// |a1 b2 - a2 b1| / (|c1| |c2|); 0 iff the coins are the same point.
double projective_distance(const Coin &c1, const Coin &c2);
bool projectively_equal(const Coin &c1, const Coin &c2);
bool projectively_equal(const Coin &c1, const Coin &c2, double tol);

std::string to_string(const Coin &c);

/// Bernoulli bias p = 1 / (1 + |z|^2), i.e. the |V> population.
double bias(const Coin &c);

/// Pairwise photon indistinguishability, 0 <= v <= 1.
class Visibility {
   public:
    explicit Visibility(double v);
    double value() const { return v_; }

   private:
    double v_;
};

struct BlochVector {
    double x, y, z;
    double norm() const;
};

/// 2x2 density matrix in the ordered basis (|H>, |V>).
class DensityMatrix2 {
   public:
    using Entries = std::array<Complex, 4>;  // row-major r00, r01, r10, r11

    /// Throws std::invalid_argument unless Hermitian, unit trace and PSD
    /// within numeric_policy().
    static DensityMatrix2 from_entries(const Entries &entries);
    /// Normalizes a Hermitian PSD matrix by its trace. Throws IndefiniteError
    /// when the trace is below numeric_policy().indefinite_trace.
    static DensityMatrix2 from_unnormalized(const Entries &entries);
    static DensityMatrix2 maximally_mixed();
    static DensityMatrix2 from_bloch(const BlochVector &r);

    const Entries &entries() const { return m_; }
    Complex operator()(int row, int col) const { return m_[2 * row + col]; }

    double trace() const { return m_[0].real() + m_[3].real(); }
    std::array<double, 2> eigenvalues() const;  // ascending
    double purity() const;
    BlochVector bloch() const;

   private:
    explicit DensityMatrix2(const Entries &entries) : m_(entries) {}
    Entries m_;
};

/// Projector onto the normalized coin state.
DensityMatrix2 coin_density(const Coin &c);

/// Uhlmann-Jozsa fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix2 &rho, const DensityMatrix2 &sigma);

/// Swap of the H and V populations: the density-matrix image of inversion.
DensityMatrix2 swap_hv(const DensityMatrix2 &rho);

/// Max elementwise |difference| between two matrices.
double max_abs_diff(const DensityMatrix2 &x, const DensityMatrix2 &y);

struct BlochPoint {
    double theta;  // [0, pi]
    double phi;    // [0, 2 pi)
};

/// theta = 0 is z = inf (|H>), theta = pi is z = 0 (|V>); z = cot(theta/2) e^{-i phi}.
BlochPoint coin_to_bloch(const Coin &c);
Coin bloch_to_coin(const BlochPoint &p);
BlochVector to_vector(const BlochPoint &p);

namespace detail {

// Closed-form eigendecomposition of a Hermitian 2x2 [[p, q], [conj q, s]].
struct HermitianEigen2 {
    std::array<double, 2> values;                 // ascending
    std::array<std::array<Complex, 2>, 2> vectors;  // vectors[i] pairs with values[i]
};
HermitianEigen2 hermitian_eigen(const DensityMatrix2::Entries &m);

}  // namespace detail

}  // namespace qqbf

#endif  // QQBF_CORE_HPP
