// Copyright 2026 The hqgan Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqgan/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace hqgan {

namespace {

constexpr double kCompletenessTol = 1e-10;

void check_qubit(std::size_t qubit, std::size_t n_qubits) {
    if (qubit >= n_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(n_qubits) + "-qubit register");
    }
}

void check_gate(const GateOp &gate, std::size_t n_qubits) {
    if (gate.kind == GateKind::CNOT) {
        if (gate.targets.size() != 2) {
            throw std::invalid_argument("CNOT needs control and target");
        }
        check_qubit(gate.targets[0], n_qubits);
        check_qubit(gate.targets[1], n_qubits);
        if (gate.targets[0] == gate.targets[1]) {
            throw std::invalid_argument("CNOT control equals target");
        }
        return;
    }
    if (gate.targets.size() != 1) {
        throw std::invalid_argument("single-qubit gate needs one target");
    }
    check_qubit(gate.targets[0], n_qubits);
}

std::size_t bit_of(std::size_t qubit, std::size_t n_qubits) {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

// mat <- (op on qubit) * mat
void left_multiply(ComplexMatrix &mat, const Matrix2c &op, std::size_t qubit,
                   std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    const auto bit = static_cast<Eigen::Index>(bit_of(qubit, n_qubits));
    for (Eigen::Index i0 = 0; i0 < dim; ++i0) {
        if ((i0 & bit) != 0) {
            continue;
        }
        const Eigen::Index i1 = i0 | bit;
        for (Eigen::Index c = 0; c < dim; ++c) {
            const cplx a = mat(i0, c);
            const cplx b = mat(i1, c);
            mat(i0, c) = op(0, 0) * a + op(0, 1) * b;
            mat(i1, c) = op(1, 0) * a + op(1, 1) * b;
        }
    }
}

// mat <- mat * (op on qubit)^dagger
void right_multiply_adjoint(ComplexMatrix &mat, const Matrix2c &op,
                            std::size_t qubit, std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    const auto bit = static_cast<Eigen::Index>(bit_of(qubit, n_qubits));
    const cplx c00 = std::conj(op(0, 0));
    const cplx c01 = std::conj(op(0, 1));
    const cplx c10 = std::conj(op(1, 0));
    const cplx c11 = std::conj(op(1, 1));
    for (Eigen::Index j0 = 0; j0 < dim; ++j0) {
        if ((j0 & bit) != 0) {
            continue;
        }
        const Eigen::Index j1 = j0 | bit;
        for (Eigen::Index r = 0; r < dim; ++r) {
            const cplx a = mat(r, j0);
            const cplx b = mat(r, j1);
            mat(r, j0) = a * c00 + b * c01;
            mat(r, j1) = a * c10 + b * c11;
        }
    }
}

// CNOT is a basis permutation, so U rho U^dagger permutes rows and columns.
void apply_cnot(ComplexMatrix &mat, std::size_t control, std::size_t target,
                std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    const auto cbit = static_cast<Eigen::Index>(bit_of(control, n_qubits));
    const auto tbit = static_cast<Eigen::Index>(bit_of(target, n_qubits));
    for (Eigen::Index i = 0; i < dim; ++i) {
        if ((i & cbit) != 0 && (i & tbit) == 0) {
            mat.row(i).swap(mat.row(i | tbit));
        }
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        if ((j & cbit) != 0 && (j & tbit) == 0) {
            mat.col(j).swap(mat.col(j | tbit));
        }
    }
}

} // namespace

double completeness_error(const KrausChannel &channel) {
    Matrix2c sum = Matrix2c::Zero();
    for (const auto &k : channel.operators) {
        sum += k.adjoint() * k;
    }
    return (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(std::size_t n_qubits, ComplexMatrix mat)
    : n_qubits_(n_qubits), mat_(std::move(mat)) {
    if (n_qubits_ < 1 || n_qubits_ > 2) {
        throw std::invalid_argument("unsupported qubit count " +
                                    std::to_string(n_qubits_));
    }
    if (static_cast<std::size_t>(mat_.rows()) != dim() ||
        static_cast<std::size_t>(mat_.cols()) != dim()) {
        throw std::invalid_argument("density matrix dimension mismatch");
    }
}

double DensityMatrix::hermiticity_error() const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd hermitian = 0.5 * (mat_ + mat_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid(double hermitian_tol, double trace_tol,
                             double psd_tol) const {
    return hermiticity_error() <= hermitian_tol &&
           std::abs(trace() - cplx{1.0, 0.0}) <= trace_tol &&
           min_eigenvalue() >= -psd_tol;
}

DensityMatrix ground_state(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 2) {
        throw std::invalid_argument("unsupported qubit count " +
                                    std::to_string(n_qubits));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    ComplexMatrix mat = ComplexMatrix::Zero(dim, dim);
    mat(0, 0) = 1.0;
    return {n_qubits, std::move(mat)};
}

Matrix2c single_qubit_matrix(GateKind kind, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    Matrix2c m;
    switch (kind) {
    case GateKind::RX:
        m << cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0};
        return m;
    case GateKind::RY:
        m << c, -s, s, c;
        return m;
    case GateKind::RZ:
        m << std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2);
        return m;
    case GateKind::IDENTITY:
        return Matrix2c::Identity();
    case GateKind::CNOT:
        break;
    }
    throw std::invalid_argument("CNOT has no single-qubit matrix");
}

ComplexMatrix gate_unitary(const GateOp &gate, std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 2) {
        throw std::invalid_argument("unsupported qubit count");
    }
    check_gate(gate, n_qubits);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    if (gate.kind == GateKind::CNOT) {
        // Permuting the rows of I yields the permutation matrix itself.
        const auto cbit = static_cast<Eigen::Index>(bit_of(gate.targets[0], n_qubits));
        const auto tbit = static_cast<Eigen::Index>(bit_of(gate.targets[1], n_qubits));
        for (Eigen::Index i = 0; i < dim; ++i) {
            if ((i & cbit) != 0 && (i & tbit) == 0) {
                u.row(i).swap(u.row(i | tbit));
            }
        }
        return u;
    }
    left_multiply(u, single_qubit_matrix(gate.kind, gate.angle),
                  gate.targets[0], n_qubits);
    return u;
}

void apply_unitary_inplace(DensityMatrix &rho, const GateOp &gate) {
    const std::size_t n = rho.n_qubits();
    check_gate(gate, n);
    switch (gate.kind) {
    case GateKind::IDENTITY:
        return;
    case GateKind::CNOT:
        apply_cnot(rho.matrix(), gate.targets[0], gate.targets[1], n);
        return;
    default: {
        const Matrix2c u = single_qubit_matrix(gate.kind, gate.angle);
        left_multiply(rho.matrix(), u, gate.targets[0], n);
        right_multiply_adjoint(rho.matrix(), u, gate.targets[0], n);
    }
    }
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const GateOp &gate) {
    DensityMatrix out = rho;
    apply_unitary_inplace(out, gate);
    return out;
}

void apply_channel_inplace(DensityMatrix &rho, const KrausChannel &channel,
                           std::size_t qubit) {
    const std::size_t n = rho.n_qubits();
    check_qubit(qubit, n);
    const auto dim = static_cast<Eigen::Index>(rho.dim());
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (const auto &k : channel.operators) {
        ComplexMatrix term = rho.matrix();
        left_multiply(term, k, qubit, n);
        right_multiply_adjoint(term, k, qubit, n);
        acc += term;
    }
    rho.matrix() = acc;
}

DensityMatrix apply_channel(const DensityMatrix &rho,
                            const KrausChannel &channel, std::size_t qubit) {
    if (channel.operators.empty() ||
        completeness_error(channel) > kCompletenessTol) {
        throw std::invalid_argument("channel '" + channel.label +
                                    "' is not trace preserving");
    }
    DensityMatrix out = rho;
    apply_channel_inplace(out, channel, qubit);
    return out;
}

double probability_zero(const DensityMatrix &rho, std::size_t qubit) {
    return 0.5 * (1.0 + expectation_z(rho, qubit));
}

double expectation_z(const DensityMatrix &rho, std::size_t qubit) {
    const std::size_t n = rho.n_qubits();
    check_qubit(qubit, n);
    const std::size_t bit = bit_of(qubit, n);
    double value = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const double diag = rho(i, i).real();
        value += (i & bit) == 0 ? diag : -diag;
    }
    return std::clamp(value, -1.0, 1.0);
}

int sample_z(const DensityMatrix &rho, std::size_t qubit, CounterRng &rng) {
    const double p0 = probability_zero(rho, qubit);
    return rng.uniform() < p0 ? 0 : 1;
}

} // namespace hqgan
