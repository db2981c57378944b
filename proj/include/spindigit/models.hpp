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
 * Compilers from spin-model descriptions to {U3, CNOT} circuits: initial-state
 * preparation blocks, two-qubit coupling blocks and first-order Trotter
 * evolution for the XX central-spin model and the transverse-field Ising
 * model.
 *
 * Spin down is |0>, spin up (excited) is |1>.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spindigit/circuit.hpp"

namespace spindigit {

/// One central spin coupled to L bath spins with H = g/2 sum_j (XcXj + YcYj).
/// Times are dimensionless, tau = g t.
struct CentralSpinSpec {
    std::size_t central = 0;
    /// Physical qubit of each bath spin, in coupling order.
    std::vector<std::size_t> bath;
    /// Circuit width; every mapped qubit must be below it.
    std::size_t n_qubits = 0;

    [[nodiscard]] std::size_t bath_size() const noexcept { return bath.size(); }

    /// Central spin on qubit 0, bath on 1..L.
    static CentralSpinSpec compact(std::size_t bath_size);

    /// 5-qubit bow-tie layout: central spin on the hub Q2, bath on the first
    /// L of {Q0, Q1, Q3, Q4}.
    static CentralSpinSpec hub(std::size_t bath_size);

    /// Bath size in [1, 4], injective mapping, all qubits below n_qubits.
    void validate() const;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected interaction graph over spins 0..n_spins-1.
struct Topology {
    std::size_t n_spins = 0;
    std::vector<Edge> edges;

    static Topology chain(std::size_t n_spins);

    /// Two rows of `rungs` spins: row 0 is 0..rungs-1, row 1 is
    /// rungs..2*rungs-1, rung i joins i and i+rungs.
    static Topology ladder(std::size_t rungs);

    [[nodiscard]] std::size_t neighbor_count(std::size_t spin) const;
    [[nodiscard]] bool connected() const;

    /// Edges in range, no self-loops or duplicates, graph connected.
    void validate() const;
};

/// H = -J sum_<ij> Zi Zj - alpha sum_i Xi, quenched from |down...down>.
/// Spin i lives on qubit i.
struct IsingSpec {
    Topology topology;
    double coupling = 1.0; // J
    double field = 1.0;    // alpha

    void validate() const;
};

using ModelSpec = std::variant<CentralSpinSpec, IsingSpec>;

[[nodiscard]] std::size_t model_width(const ModelSpec &model);

// Initial states.
struct TwoPES {
    double phi = 0.0;
};
struct ThreePES {
    double chi = 0.0;
};
struct CentralExcited {
    std::size_t bath_size = 1;
};
struct Ferromagnetic {};

using InitialStateSpec = std::variant<TwoPES, ThreePES, CentralExcited, Ferromagnetic>;

/// Short identifiers used in file names, e.g. "central-spin-L2",
/// "ising-ladder16-alpha2", "2pes-phi3.1416".
[[nodiscard]] std::string describe(const ModelSpec &model);
[[nodiscard]] std::string describe(const InitialStateSpec &initial);

/**
 * Greedy edge colouring of the bonds: each stage holds pairwise-disjoint
 * bonds that can be entangled in parallel. A chain needs 2 stages and a
 * two-row ladder 3.
 */
[[nodiscard]] std::vector<std::vector<Edge>>
bond_schedule(const Topology &topology);

// Circuit fragments. Each fragment has width max(operand) + 1 and is meant to
// be appended into a wider circuit.

/// Rz(angle) = exp(-i angle Z / 2), emitted as H . U3(angle, -pi/2, pi/2) . H.
[[nodiscard]] Circuit rz_fragment(std::size_t qubit, double angle,
                                  const std::string &tag = "rz");

/// On |00> of (a, b): (|a0 b1> + e^{i phi} |a1 b0>) / sqrt(2).
/// H and U(phi) = diag(1, e^{i phi}) on a, X on b, CNOT a -> b.
[[nodiscard]] Circuit prepare_2pes(double phi, std::size_t qubit_a,
                                   std::size_t qubit_b);

/**
 * On |000> of (a, m, c): (|a> - 2 e^{i chi} |m> + |c>) / sqrt(6), where |q>
 * denotes the single excitation on q. m is the hub: every CNOT touches it.
 *
 * Built from A_chi = U3(2 acos(1/sqrt3), chi, 0), Z, B = U3(pi/4, 0, 0), X
 * and five CNOTs.
 */
[[nodiscard]] Circuit prepare_3pes(double chi,
                                   const std::array<std::size_t, 3> &qubits);

/// SWAP as three CNOTs.
[[nodiscard]] Circuit relocate(std::size_t from, std::size_t to);

/// exp(-i angle Xc Xj) exp(-i angle Yc Yj); four CNOTs.
[[nodiscard]] Circuit xx_yy_block(std::size_t qubit_c, std::size_t qubit_j,
                                  double angle);

/// exp(-i angle Zi Zj) = CNOT . Rz_j(2 angle) . CNOT; two CNOTs.
[[nodiscard]] Circuit zz_block(std::size_t qubit_i, std::size_t qubit_j,
                               double angle);

/// N repetitions of xx_yy_block(central, bath_j, tau / (2N)) over the bath in
/// mapping order. Gates are tagged "trotter_step:<k>/xxyy:(c,j)".
[[nodiscard]] Circuit trotter_central_spin(const CentralSpinSpec &spec,
                                           double tau, std::size_t steps);

/// N repetitions of: exp(+i alpha t/N X) on every qubit, then the bond
/// stages of bond_schedule() with zz_block angle -J t / N. Gates are tagged
/// "trotter_step:<k>/field:(i)" and "trotter_step:<k>/zz:(i,j)".
[[nodiscard]] Circuit trotter_ising(const IsingSpec &spec, double time,
                                    std::size_t steps);

/// Physical layout of a compiled central-spin experiment after any
/// relocation.
struct CentralSpinLayout {
    std::size_t central = 0;
    std::vector<std::size_t> bath;
    /// Qubits the preparation block ran on, before relocation.
    std::vector<std::size_t> prep_qubits;
};

struct CompiledExperiment {
    Circuit circuit;
    /// Qubits whose mean excited population is the observable.
    std::vector<std::size_t> observed;
    std::optional<CentralSpinLayout> layout;
};

/**
 * Preparation (tagged "prep/..."), optional relocation (3PES only, tagged
 * "prep/swap") and Trotter evolution in a single circuit.
 *
 * - TwoPES needs a central-spin model with L = 2; the pair is (bath0, bath1).
 * - ThreePES needs L = 3; the block runs on (bath0, central, bath1) and the
 *   hub is then swapped onto bath2, so bath2 carries the -2 e^{i chi} weight.
 * - CentralExcited needs a matching L.
 * - Ferromagnetic needs an Ising model.
 *
 * Throws ValidationError naming the mismatch otherwise.
 */
[[nodiscard]] CompiledExperiment full_experiment(const InitialStateSpec &initial,
                                                 const ModelSpec &model,
                                                 double time,
                                                 std::size_t steps);

/// "central-spin:L=<n>", "ising:chain<n>", "ising:ladder<n>" (n spins).
/// Ising presets use J = 1, alpha = 1.
[[nodiscard]] ModelSpec model_from_name(const std::string &name);

} // namespace spindigit
