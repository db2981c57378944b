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

#include "spindigit/circuit.hpp"

#include <algorithm>
#include <set>

#include "spindigit/error.hpp"

namespace spindigit {

Gate Gate::u3(std::size_t qubit, U3Params params, std::string tag) {
    Gate g;
    g.kind = GateKind::U3;
    g.qubits = {qubit, qubit};
    g.params = params;
    g.tag = std::move(tag);
    return g;
}

Gate Gate::cnot(std::size_t control, std::size_t target, std::string tag) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.qubits = {control, target};
    g.tag = std::move(tag);
    return g;
}

Circuit::Circuit(std::size_t n_qubits)
    : n_qubits_(n_qubits), frontier_(n_qubits, 0) {
    if (n_qubits == 0) {
        throw ValidationError("circuit width must be at least 1");
    }
}

std::size_t Circuit::gate_count() const noexcept {
    std::size_t count = 0;
    for (const auto &layer : layers_) {
        count += layer.size();
    }
    return count;
}

Circuit &Circuit::append(Gate gate, LayerPolicy policy) {
    for (std::size_t k = 0; k < gate.arity(); ++k) {
        if (gate.qubits[k] >= n_qubits_) {
            throw IndexError("gate operand " + std::to_string(gate.qubits[k]) +
                             " out of range for width " +
                             std::to_string(n_qubits_));
        }
    }
    if (gate.kind == GateKind::CNOT && gate.qubits[0] == gate.qubits[1]) {
        throw ValidationError("CNOT operands must differ (both are qubit " +
                              std::to_string(gate.qubits[0]) + ")");
    }

    std::size_t slot = layers_.size();
    if (policy == LayerPolicy::EarliestCompatible) {
        slot = frontier_[gate.qubits[0]];
        if (gate.arity() == 2) {
            slot = std::max(slot, frontier_[gate.qubits[1]]);
        }
    }
    if (slot == layers_.size()) {
        layers_.emplace_back();
    }
    for (std::size_t k = 0; k < gate.arity(); ++k) {
        frontier_[gate.qubits[k]] = slot + 1;
    }
    layers_[slot].push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &fragment, LayerPolicy policy) {
    for (const Gate &g : fragment.flattened()) {
        append(g, policy);
    }
    return *this;
}

std::vector<Gate> Circuit::flattened() const {
    std::vector<Gate> out;
    out.reserve(gate_count());
    for (const auto &layer : layers_) {
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

void Circuit::validate() const {
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        std::set<std::size_t> used;
        for (const Gate &g : layers_[l]) {
            for (std::size_t k = 0; k < g.arity(); ++k) {
                if (g.qubits[k] >= n_qubits_) {
                    throw IndexError("layer " + std::to_string(l) +
                                     " operand out of range");
                }
                if (!used.insert(g.qubits[k]).second) {
                    throw ValidationError("layer " + std::to_string(l) +
                                          " uses qubit " +
                                          std::to_string(g.qubits[k]) +
                                          " twice");
                }
            }
        }
    }
}

Circuit circuit_from_gates(std::size_t n_qubits, const std::vector<Gate> &gates,
                           LayerPolicy policy) {
    Circuit c(n_qubits);
    for (const Gate &g : gates) {
        c.append(g, policy);
    }
    return c;
}

void apply_gate(QuantumState &state, const Gate &gate) {
    if (gate.kind == GateKind::CNOT) {
        apply_cnot(state, gate.qubits[0], gate.qubits[1]);
    } else {
        apply_u3(state, gate.qubits[0], gate.params);
    }
}

void run_in_place(const Circuit &circuit, QuantumState &state) {
    if (state.n_qubits() != circuit.n_qubits()) {
        throw ValidationError("circuit width " +
                              std::to_string(circuit.n_qubits()) +
                              " does not match state width " +
                              std::to_string(state.n_qubits()));
    }
    for (const auto &layer : circuit.layers()) {
        for (const Gate &g : layer) {
            apply_gate(state, g);
        }
    }
}

QuantumState run(const Circuit &circuit, const QuantumState &initial) {
    QuantumState state = initial;
    run_in_place(circuit, state);
    return state;
}

std::size_t GateCensus::max_cnot_per_qubit() const {
    std::size_t best = 0;
    for (const auto &[q, n] : cnot_per_qubit) {
        best = std::max(best, n);
    }
    return best;
}

GateCensus census(const Circuit &circuit) {
    return census(circuit, [](const Gate &) { return true; });
}

GateCensus census(const Circuit &circuit, const GateFilter &filter) {
    GateCensus out;
    for (const auto &layer : circuit.layers()) {
        bool counted = false;
        for (const Gate &g : layer) {
            if (!filter(g)) {
                continue;
            }
            counted = true;
            if (g.kind == GateKind::CNOT) {
                ++out.total_cnot;
                ++out.cnot_per_qubit[g.qubits[0]];
                ++out.cnot_per_qubit[g.qubits[1]];
            }
        }
        if (counted) {
            ++out.depth;
        }
    }
    return out;
}

GateFilter tag_prefix(std::string prefix) {
    return [prefix = std::move(prefix)](const Gate &g) {
        return g.tag.starts_with(prefix);
    };
}

CouplingMap ibmqx4_coupling() {
    return {{1, 0}, {2, 0}, {2, 1}, {3, 2}, {3, 4}, {2, 4}};
}

std::vector<LintFinding> lint_topology(const Circuit &circuit,
                                       const CouplingMap &map) {
    std::set<std::pair<std::size_t, std::size_t>> native(map.begin(),
                                                         map.end());
    std::vector<LintFinding> findings;
    const auto gates = circuit.flattened();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        if (g.kind != GateKind::CNOT) {
            continue;
        }
        const auto c = g.qubits[0];
        const auto t = g.qubits[1];
        if (native.contains({c, t})) {
            continue;
        }
        const auto kind = native.contains({t, c})
                              ? LintFinding::Kind::ReversedDirection
                              : LintFinding::Kind::MissingCoupler;
        findings.push_back({kind, i, c, t});
    }
    return findings;
}

} // namespace spindigit
