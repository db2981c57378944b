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
 * Circuit intermediate representation over the {U3, CNOT} gate set, with
 * explicit parallel layers.
 */
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spindigit/statevector.hpp"

namespace spindigit {

enum class GateKind { U3, CNOT };

struct Gate {
    GateKind kind = GateKind::U3;
    /// U3 uses qubits[0]; CNOT is qubits[0] (control) -> qubits[1] (target).
    std::array<std::size_t, 2> qubits{0, 0};
    U3Params params{};
    /// Compiler provenance, e.g. "trotter_step:2/zz:(3,4)".
    std::string tag;

    static Gate u3(std::size_t qubit, U3Params params, std::string tag = {});
    static Gate cnot(std::size_t control, std::size_t target,
                     std::string tag = {});

    [[nodiscard]] std::size_t arity() const noexcept {
        return kind == GateKind::CNOT ? 2 : 1;
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

enum class LayerPolicy {
    /// Always open a fresh layer.
    NewLayer,
    /// Place the gate one layer past the last layer touching its qubits.
    EarliestCompatible,
};

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<std::vector<Gate>> &layers() const noexcept {
        return layers_;
    }
    [[nodiscard]] std::size_t depth() const noexcept { return layers_.size(); }
    [[nodiscard]] std::size_t gate_count() const noexcept;
    [[nodiscard]] bool empty() const noexcept { return layers_.empty(); }

    /// Throws IndexError for an operand outside the width and
    /// ValidationError for a CNOT with equal operands.
    Circuit &append(Gate gate,
                    LayerPolicy policy = LayerPolicy::EarliestCompatible);

    /// Appends every gate of `fragment` in flattened order. Widths may differ
    /// as long as the fragment's operands fit.
    Circuit &append(const Circuit &fragment,
                    LayerPolicy policy = LayerPolicy::EarliestCompatible);

    /// Gates in layer order; within a layer, insertion order.
    [[nodiscard]] std::vector<Gate> flattened() const;

    /// Throws ValidationError if any layer uses a qubit twice.
    void validate() const;

  private:
    std::size_t n_qubits_;
    std::vector<std::vector<Gate>> layers_;
    // For each qubit, one past the last layer that touches it.
    std::vector<std::size_t> frontier_;
};

/// Builds a circuit from a sequential gate list with the given policy.
[[nodiscard]] Circuit circuit_from_gates(std::size_t n_qubits,
                                         const std::vector<Gate> &gates,
                                         LayerPolicy policy =
                                             LayerPolicy::EarliestCompatible);

/// Applies the circuit layer by layer to a copy of `initial`.
[[nodiscard]] QuantumState run(const Circuit &circuit,
                               const QuantumState &initial);

/// Same as run() but mutates `state`.
void run_in_place(const Circuit &circuit, QuantumState &state);

void apply_gate(QuantumState &state, const Gate &gate);

struct GateCensus {
    std::size_t total_cnot = 0;
    std::map<std::size_t, std::size_t> cnot_per_qubit;
    std::size_t depth = 0;

    [[nodiscard]] std::size_t max_cnot_per_qubit() const;
};

using GateFilter = std::function<bool(const Gate &)>;

[[nodiscard]] GateCensus census(const Circuit &circuit);

/// Census restricted to gates accepted by `filter`. Depth counts only
/// layers containing at least one accepted gate.
[[nodiscard]] GateCensus census(const Circuit &circuit,
                                const GateFilter &filter);

/// Accepts gates whose tag starts with `prefix`.
[[nodiscard]] GateFilter tag_prefix(std::string prefix);

/// Directed two-qubit couplers of a device: (control, target) pairs a CNOT
/// can use natively.
using CouplingMap = std::vector<std::pair<std::size_t, std::size_t>>;

/// 5-qubit bow-tie device: hub Q2 coupled to Q0, Q1, Q3, Q4 plus Q0-Q1 and
/// Q3-Q4.
[[nodiscard]] CouplingMap ibmqx4_coupling();

struct LintFinding {
    enum class Kind {
        /// The coupler exists only in the opposite direction; hardware needs
        /// H conjugation on both qubits.
        ReversedDirection,
        /// No coupler joins the two qubits.
        MissingCoupler,
    };
    Kind kind;
    std::size_t gate_index; // position in flattened order
    std::size_t control;
    std::size_t target;
};

/// Reports CNOTs that a fixed-direction device could not run as written.
/// The simulator itself is direction-agnostic.
[[nodiscard]] std::vector<LintFinding> lint_topology(const Circuit &circuit,
                                                     const CouplingMap &map);

} // namespace spindigit
