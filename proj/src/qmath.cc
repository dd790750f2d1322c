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

#include "qsi/qmath.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsi {

PureState PureState::from_amplitudes(Vector amps) {
    if (amps.size() == 0) {
        throw std::invalid_argument("state must have positive dimension");
    }
    double norm = amps.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument("state is not normalized (norm " + std::to_string(norm) + ")");
    }
    return PureState(std::move(amps));
}

PureState PureState::normalized(Vector amps) {
    if (amps.size() == 0) {
        throw std::invalid_argument("state must have positive dimension");
    }
    double norm = amps.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    amps /= norm;
    return PureState(std::move(amps));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(amps));
}

PureState PureState::plus() {
    Vector amps(2);
    amps << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
    return PureState(std::move(amps));
}

PureState PureState::minus() {
    Vector amps(2);
    amps << std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2;
    return PureState(std::move(amps));
}

PureState tensor(std::span<const PureState> states) {
    if (states.empty()) {
        throw std::invalid_argument("empty tensor");
    }
    Vector acc = states.front().amps();
    for (std::size_t i = 1; i < states.size(); ++i) {
        const Vector &next = states[i].amps();
        Vector out(acc.size() * next.size());
        for (Eigen::Index a = 0; a < acc.size(); ++a) {
            out.segment(a * next.size(), next.size()) = acc(a) * next;
        }
        acc = std::move(out);
    }
    return PureState::from_amplitudes(std::move(acc));
}

PureState tensor(const std::vector<PureState> &states) {
    return tensor(std::span<const PureState>(states));
}

Complex inner(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner product of states with different dimensions");
    }
    return a.amps().dot(b.amps());
}

Matrix dft(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("dft size must be positive");
    }
    const auto size = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Matrix f(size, size);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            // Reduce the exponent first so large n keeps full phase accuracy.
            std::size_t e = (j * k) % n;
            double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
            f(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = std::polar(scale, angle);
        }
    }
    return f;
}

bool is_unitary(const Matrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    Matrix diff = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return diff.cwiseAbs().maxCoeff() <= tol;
}

namespace {

std::size_t product_of(const std::vector<std::size_t> &dims, std::size_t from) {
    std::size_t p = 1;
    for (std::size_t i = from; i < dims.size(); ++i) {
        p *= dims[i];
    }
    return p;
}

}  // namespace

JointState JointState::from_amplitudes(std::vector<std::size_t> factor_dims, Vector amps) {
    if (factor_dims.empty()) {
        throw std::invalid_argument("joint state needs at least one factor");
    }
    for (std::size_t d : factor_dims) {
        if (d == 0) {
            throw std::invalid_argument("factor dimensions must be positive");
        }
    }
    if (static_cast<std::size_t>(amps.size()) != product_of(factor_dims, 0)) {
        throw std::invalid_argument("amplitude count does not match factor dimensions");
    }
    if (std::abs(amps.norm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("joint state is not normalized");
    }
    return JointState(std::move(factor_dims), std::move(amps));
}

JointState JointState::with_control(std::size_t control_dim, std::span<const PureState> content) {
    if (control_dim == 0) {
        throw std::invalid_argument("control dimension must be positive");
    }
    std::vector<std::size_t> dims{control_dim};
    for (const auto &s : content) {
        dims.push_back(s.dim());
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(product_of(dims, 0)));
    if (content.empty()) {
        amps(0) = 1.0;
    } else {
        PureState joint = tensor(content);
        amps.head(joint.amps().size()) = joint.amps();
    }
    return JointState(std::move(dims), std::move(amps));
}

std::size_t JointState::content_dim() const {
    return product_of(factor_dims_, 1);
}

JointState JointState::apply_to_control(const Matrix &u) const {
    const auto n = static_cast<Eigen::Index>(control_dim());
    const auto d = static_cast<Eigen::Index>(content_dim());
    if (u.rows() != n || u.cols() != n) {
        throw std::invalid_argument("control operator has wrong shape");
    }
    // Column c of this view is the content block for control value c.
    Eigen::Map<const Matrix> blocks(amps_.data(), d, n);
    Matrix out = blocks * u.transpose();
    Vector amps = Eigen::Map<Vector>(out.data(), n * d);
    return JointState(factor_dims_, std::move(amps));
}

Vector JointState::content_block(std::size_t outcome) const {
    if (outcome >= control_dim()) {
        throw std::invalid_argument("control outcome out of range");
    }
    const auto d = static_cast<Eigen::Index>(content_dim());
    return amps_.segment(static_cast<Eigen::Index>(outcome) * d, d);
}

std::vector<MeasurementBranch> measure_first_register(const JointState &s) {
    std::vector<MeasurementBranch> branches;
    const auto d = static_cast<Eigen::Index>(s.content_dim());
    for (std::size_t c = 0; c < s.control_dim(); ++c) {
        Vector block = s.content_block(c);
        double p = block.squaredNorm();
        if (p < 1e-14) {
            continue;
        }
        Vector post = Vector::Zero(s.amps().size());
        post.segment(static_cast<Eigen::Index>(c) * d, d) = block / std::sqrt(p);
        branches.push_back({c, p, JointState::from_amplitudes(s.factor_dims(), std::move(post))});
    }
    return branches;
}

DensityMatrix DensityMatrix::from_entries(Matrix entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw std::invalid_argument("density matrix must be square and nonempty");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(entries.trace() - Complex(1.0)) > kTolerance) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kTolerance) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
    return DensityMatrix(std::move(entries));
}

DensityMatrix DensityMatrix::pure(const PureState &psi) {
    return DensityMatrix(psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights, std::span<const PureState> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw std::invalid_argument("mixture needs one weight per state");
    }
    const auto dim = static_cast<Eigen::Index>(states.front().dim());
    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (weights[i] < 0.0) {
            throw std::invalid_argument("mixture weights must be nonnegative");
        }
        if (states[i].dim() != states.front().dim()) {
            throw std::invalid_argument("mixture states must share a dimension");
        }
        rho += weights[i] * (states[i].amps() * states[i].amps().adjoint());
    }
    return from_entries(std::move(rho));
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace distance of matrices with different dimensions");
    }
    Matrix diff = a.entries() - b.entries();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qsi
