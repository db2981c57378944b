// Copyright 2026 The spindigit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Reference dynamics that bypass circuit compilation: dense Hamiltonians with
 * spectral propagation, literal products of Pauli-term exponentials, and a
 * matrix-free fourth-order integrator for systems too large to diagonalize.
 */
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "spindigit/models.hpp"
#include "spindigit/statevector.hpp"

namespace spindigit {

/// coefficient * (tensor product of factors). No factors means a constant
/// energy shift (coefficient * identity).
struct PauliTerm {
    double coefficient = 0.0;
    std::map<std::size_t, Pauli> factors;
};

using PauliSum = std::vector<PauliTerm>;

using HamiltonianMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDenseDefaultCeiling = 12;
inline constexpr std::size_t kDenseHardCeiling = 14;

struct OracleLimits {
    /// Raises the dense ceiling from 12 to 14 qubits.
    bool extended = false;

    [[nodiscard]] std::size_t dense_ceiling() const noexcept {
        return extended ? kDenseHardCeiling : kDenseDefaultCeiling;
    }
};

/// Sum of coefficient * Pauli strings as a dense 2^n x 2^n matrix, in the
/// same basis ordering as QuantumState. Throws CapacityError above the
/// dense ceiling and IndexError for factors outside [0, n).
[[nodiscard]] HamiltonianMatrix build_hamiltonian(const PauliSum &terms,
                                                  std::size_t n_qubits,
                                                  OracleLimits limits = {});

/// Eigendecomposition of a Hermitian matrix, reusable across many times.
class SpectralPropagator {
  public:
    explicit SpectralPropagator(const HamiltonianMatrix &hamiltonian);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const Eigen::VectorXd &eigenvalues() const noexcept {
        return eigenvalues_;
    }

    /// exp(-i H t) psi0. Throws ValidationError on a dimension mismatch.
    [[nodiscard]] QuantumState evolve(const QuantumState &psi0,
                                      double time) const;

  private:
    std::size_t n_qubits_ = 0;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

/// One-shot exp(-i H t) psi0 through a fresh SpectralPropagator.
[[nodiscard]] QuantumState evolve_exact(const HamiltonianMatrix &hamiltonian,
                                        const QuantumState &psi0, double time);

/// psi <- exp(-i c t P) psi = cos(c t) psi - i sin(c t) P psi.
void apply_pauli_exponential(QuantumState &state, const PauliTerm &term,
                             double time);

/// psi <- P psi for the Pauli string of `term` (coefficient ignored).
void apply_pauli_string(QuantumState &state, const PauliTerm &term);

/// [prod_k exp(-i c_k (t/N) P_k)]^N psi0, the first term of `terms` acting
/// first within each step.
[[nodiscard]] QuantumState trotter_reference(const PauliSum &terms,
                                             const QuantumState &psi0,
                                             double time, std::size_t steps);

struct MatrixFreeResult {
    QuantumState state;
    /// ||psi(2n) - psi(n)|| / 15: the asymptotic error of psi(2n), and an
    /// upper bound in practice for the extrapolated state returned.
    double error_estimate = 0.0;
    /// Substeps used for the returned state.
    std::size_t substeps = 0;
};

/**
 * Fourth-order Suzuki integration with `substeps` and 2 * `substeps` steps;
 * the Richardson combination (16 psi(2n) - psi(n)) / 15, renormalized, is
 * returned. Throws ToleranceError carrying the estimate
 * when it exceeds `tolerance`.
 */
[[nodiscard]] MatrixFreeResult evolve_matrix_free(const PauliSum &terms,
                                                  const QuantumState &psi0,
                                                  double time,
                                                  std::size_t substeps,
                                                  double tolerance = 1e-8);

/// Doubles the substep count from `initial_substeps` until the estimate is
/// below `tolerance`; throws ToleranceError past `max_substeps`.
[[nodiscard]] MatrixFreeResult
evolve_matrix_free_adaptive(const PauliSum &terms, const QuantumState &psi0,
                            double time, double tolerance = 1e-8,
                            std::size_t initial_substeps = 4,
                            std::size_t max_substeps = 4096);

/// <psi| sum_k c_k P_k |psi>, real for Hermitian sums.
[[nodiscard]] double expectation(const PauliSum &terms,
                                 const QuantumState &state);

/// g/2 (Yc Yj + Xc Xj) per bath spin in mapping order, YY first, matching
/// the xx_yy_block gate order.
[[nodiscard]] PauliSum central_spin_terms(const CentralSpinSpec &spec,
                                          double g = 1.0);

/// eps (sigma_z + 1/2) for the central and every bath spin, where
/// sigma_z = +1 on the excited state |1>, i.e. sigma_z = -Z.
[[nodiscard]] PauliSum excitation_energy_terms(const CentralSpinSpec &spec,
                                               double epsilon);

/// -alpha X_i for every spin, then -J Z_i Z_j stage by stage in
/// bond_schedule() order, matching trotter_ising.
[[nodiscard]] PauliSum ising_terms(const IsingSpec &spec);

[[nodiscard]] PauliSum model_terms(const ModelSpec &model);

/// The state full_experiment prepares, written down directly, in the same
/// physical layout (for 3PES, after the hub has been relocated to bath2).
[[nodiscard]] QuantumState initial_state_vector(const InitialStateSpec &initial,
                                                const ModelSpec &model);

} // namespace spindigit
