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

/**
 * @file
 * Dense density-matrix simulation for one or two qubits.
 *
 * Qubit 0 is the most significant bit of the basis index, so for two qubits
 * the basis order is |q0 q1> = |00>, |01>, |10>, |11>.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hqgan/rng.hpp"

namespace hqgan {

using cplx = std::complex<double>;

/// Complex matrix of at most 4x4; storage is inline.
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

/// 2x2 single-qubit operator.
using Matrix2c = Eigen::Matrix2cd;

enum class GateKind { RX, RY, RZ, CNOT, IDENTITY };

/**
 * @brief A gate in a circuit.
 *
 * targets[0] is the acted-upon qubit for single-qubit kinds; for CNOT it is
 * the control and targets[1] the target.
 */
struct GateOp {
    GateKind kind{GateKind::IDENTITY};
    double angle{0.0};
    std::vector<std::size_t> targets;

    static GateOp rx(std::size_t qubit, double angle) {
        return {GateKind::RX, angle, {qubit}};
    }
    static GateOp ry(std::size_t qubit, double angle) {
        return {GateKind::RY, angle, {qubit}};
    }
    static GateOp rz(std::size_t qubit, double angle) {
        return {GateKind::RZ, angle, {qubit}};
    }
    static GateOp cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, 0.0, {control, target}};
    }
    static GateOp identity(std::size_t qubit) {
        return {GateKind::IDENTITY, 0.0, {qubit}};
    }

    [[nodiscard]] bool is_two_qubit() const { return kind == GateKind::CNOT; }
};

/**
 * @brief Single-qubit Kraus map. Operators are applied to a target qubit
 * chosen at application time.
 */
struct KrausChannel {
    std::vector<Matrix2c> operators;
    std::string label;
};

/// Max-norm of sum_k K_k^dagger K_k - I.
double completeness_error(const KrausChannel &channel);

/**
 * @brief Mixed state of 1 or 2 qubits.
 */
class DensityMatrix {
  public:
    DensityMatrix(std::size_t n_qubits, ComplexMatrix mat);

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const {
        return std::size_t{1} << n_qubits_;
    }
    [[nodiscard]] const ComplexMatrix &matrix() const { return mat_; }
    ComplexMatrix &matrix() { return mat_; }

    cplx operator()(std::size_t row, std::size_t col) const {
        return mat_(static_cast<Eigen::Index>(row),
                    static_cast<Eigen::Index>(col));
    }

    [[nodiscard]] cplx trace() const { return mat_.trace(); }
    /// max |rho_ij - conj(rho_ji)|
    [[nodiscard]] double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part. Test/debug use only.
    [[nodiscard]] double min_eigenvalue() const;
    /// Hermitian, unit trace and PSD within the documented tolerances.
    [[nodiscard]] bool is_valid(double hermitian_tol = 1e-10,
                                double trace_tol = 1e-10,
                                double psd_tol = 1e-9) const;

  private:
    std::size_t n_qubits_;
    ComplexMatrix mat_;
};

/** @brief |0...0><0...0| for n_qubits in {1, 2}. */
DensityMatrix ground_state(std::size_t n_qubits);

/** @brief 2x2 matrix of a single-qubit gate kind (not CNOT). */
Matrix2c single_qubit_matrix(GateKind kind, double angle);

/** @brief Full-space unitary of a gate for the given register size. */
ComplexMatrix gate_unitary(const GateOp &gate, std::size_t n_qubits);

/** @brief rho -> U rho U^dagger. */
DensityMatrix apply_unitary(const DensityMatrix &rho, const GateOp &gate);

/// In-place variant used on hot paths.
void apply_unitary_inplace(DensityMatrix &rho, const GateOp &gate);

/**
 * @brief rho -> sum_k K_k rho K_k^dagger with K_k acting on `qubit`.
 *
 * Throws std::invalid_argument if the channel fails the completeness check.
 */
DensityMatrix apply_channel(const DensityMatrix &rho,
                            const KrausChannel &channel, std::size_t qubit);

/// In-place variant; skips the completeness check.
void apply_channel_inplace(DensityMatrix &rho, const KrausChannel &channel,
                           std::size_t qubit);

/** @brief Tr(rho Z_qubit), clamped to [-1, 1]. */
double expectation_z(const DensityMatrix &rho, std::size_t qubit);

/** @brief Probability of measuring 0 on `qubit`. */
double probability_zero(const DensityMatrix &rho, std::size_t qubit);

/**
 * @brief One projective Z measurement of `qubit`; returns 0 with probability
 * (1 + <Z>)/2. Consumes exactly one uniform draw.
 */
int sample_z(const DensityMatrix &rho, std::size_t qubit, CounterRng &rng);

} // namespace hqgan
