// Copyright 2026 The QSI Lab Authors
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

#ifndef QSI_QMATH_H
#define QSI_QMATH_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsi {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Allowed deviation of a state norm from 1 on construction.
inline constexpr double kNormTolerance = 1e-9;
/// Default comparison tolerance for derived quantities.
inline constexpr double kTolerance = 1e-10;

/// A normalized vector in a finite-dimensional Hilbert space.
class PureState {
  public:
    /// Takes the amplitudes as given; throws std::invalid_argument unless the
    /// L2 norm is 1 within kNormTolerance.
    static PureState from_amplitudes(Vector amps);
    /// Builder for unnormalized input: rescales to unit norm. Throws on the
    /// zero vector.
    static PureState normalized(Vector amps);
    static PureState basis(std::size_t dim, std::size_t index);
    /// (|0> + |1>)/sqrt(2) and (|0> - |1>)/sqrt(2).
    static PureState plus();
    static PureState minus();

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector &amps() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  private:
    explicit PureState(Vector amps) : amps_(std::move(amps)) {}
    Vector amps_;
};

/// Kronecker product in list order. Throws std::invalid_argument("empty tensor")
/// on an empty list.
PureState tensor(std::span<const PureState> states);
PureState tensor(const std::vector<PureState> &states);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const PureState &a, const PureState &b);

/// Unitary DFT matrix, entry (j, k) = exp(2 pi i j k / n) / sqrt(n).
Matrix dft(std::size_t n);

bool is_unitary(const Matrix &u, double tol = kNormTolerance);

/// Pure state on (control register) x H_1 x ... x H_n. The control register is
/// the most significant factor of the amplitude index.
class JointState {
  public:
    static JointState from_amplitudes(std::vector<std::size_t> factor_dims, Vector amps);
    /// |0> on a control of dimension control_dim, followed by the product of
    /// the content states.
    static JointState with_control(std::size_t control_dim, std::span<const PureState> content);

    const std::vector<std::size_t> &factor_dims() const { return factor_dims_; }
    const Vector &amps() const { return amps_; }
    std::size_t control_dim() const { return factor_dims_.front(); }
    /// Product of all factor dimensions after the control.
    std::size_t content_dim() const;

    /// Applies u (control_dim x control_dim) to the control register.
    JointState apply_to_control(const Matrix &u) const;
    /// The content amplitudes paired with control value `outcome`, unnormalized.
    Vector content_block(std::size_t outcome) const;

  private:
    JointState(std::vector<std::size_t> factor_dims, Vector amps)
        : factor_dims_(std::move(factor_dims)), amps_(std::move(amps)) {}
    std::vector<std::size_t> factor_dims_;
    Vector amps_;
};

struct MeasurementBranch {
    std::size_t outcome;
    double probability;
    JointState post_state;
};

/// Computational-basis measurement of the control register. Outcomes with
/// probability below 1e-14 are dropped; post states are renormalized.
std::vector<MeasurementBranch> measure_first_register(const JointState &s);

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
  public:
    /// Validates hermiticity, trace and spectrum to 1e-10.
    static DensityMatrix from_entries(Matrix entries);
    static DensityMatrix pure(const PureState &psi);
    /// Sum_i weights[i] |states[i]><states[i]|.
    static DensityMatrix mixture(std::span<const double> weights, std::span<const PureState> states);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix &entries() const { return entries_; }

  private:
    explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

/// (1/2) * sum of |eigenvalues| of (a - b).
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace qsi

#endif  // QSI_QMATH_H
