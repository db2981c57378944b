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

#include "spindigit/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <queue>
#include <set>

#include "spindigit/error.hpp"

namespace spindigit {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::size_t width_for(std::initializer_list<std::size_t> qubits) {
    return std::max(qubits) + 1;
}

void require_distinct(std::initializer_list<std::size_t> qubits,
                      const char *what) {
    std::set<std::size_t> seen;
    for (auto q : qubits) {
        if (!seen.insert(q).second) {
            throw ValidationError(std::string(what) +
                                  ": qubits must be distinct (qubit " +
                                  std::to_string(q) + " repeated)");
        }
    }
}

void require_finite(double value, const char *what) {
    if (!std::isfinite(value)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
}

std::string compact_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    if (s == "-0") {
        s = "0";
    }
    return s;
}

std::string pair_tag(std::size_t a, std::size_t b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// Appends the gates of `fragment` with `prefix` prepended to each tag.
void append_tagged(Circuit &target, const Circuit &fragment,
                   const std::string &prefix) {
    for (Gate g : fragment.flattened()) {
        g.tag = prefix + g.tag;
        target.append(std::move(g));
    }
}

} // namespace

CentralSpinSpec CentralSpinSpec::compact(std::size_t bath_size) {
    CentralSpinSpec spec;
    spec.central = 0;
    spec.bath.resize(bath_size);
    std::iota(spec.bath.begin(), spec.bath.end(), std::size_t{1});
    spec.n_qubits = bath_size + 1;
    spec.validate();
    return spec;
}

CentralSpinSpec CentralSpinSpec::hub(std::size_t bath_size) {
    static constexpr std::array<std::size_t, 4> kLeaves{0, 1, 3, 4};
    if (bath_size < 1 || bath_size > kLeaves.size()) {
        throw ValidationError("hub layout supports bath sizes 1..4, got " +
                              std::to_string(bath_size));
    }
    CentralSpinSpec spec;
    spec.central = 2;
    spec.bath.assign(kLeaves.begin(), kLeaves.begin() + bath_size);
    spec.n_qubits = std::max<std::size_t>(3, spec.bath.back() + 1);
    spec.validate();
    return spec;
}

void CentralSpinSpec::validate() const {
    if (bath.empty() || bath.size() > 4) {
        throw ValidationError("central-spin bath size must be in [1, 4], got " +
                              std::to_string(bath.size()));
    }
    std::set<std::size_t> seen{central};
    for (auto q : bath) {
        if (!seen.insert(q).second) {
            throw ValidationError("central-spin mapping is not injective "
                                  "(qubit " +
                                  std::to_string(q) + " reused)");
        }
    }
    if (*seen.rbegin() >= n_qubits) {
        throw ValidationError("central-spin mapping uses qubit " +
                              std::to_string(*seen.rbegin()) +
                              " beyond circuit width " +
                              std::to_string(n_qubits));
    }
}

Topology Topology::chain(std::size_t n_spins) {
    Topology t;
    t.n_spins = n_spins;
    for (std::size_t i = 0; i + 1 < n_spins; ++i) {
        t.edges.emplace_back(i, i + 1);
    }
    return t;
}

Topology Topology::ladder(std::size_t rungs) {
    Topology t;
    t.n_spins = 2 * rungs;
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t i = 0; i + 1 < rungs; ++i) {
            t.edges.emplace_back(row * rungs + i, row * rungs + i + 1);
        }
    }
    for (std::size_t i = 0; i < rungs; ++i) {
        t.edges.emplace_back(i, i + rungs);
    }
    return t;
}

std::size_t Topology::neighbor_count(std::size_t spin) const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [spin](const Edge &e) {
            return e.first == spin || e.second == spin;
        }));
}

bool Topology::connected() const {
    if (n_spins == 0) {
        return false;
    }
    std::vector<std::vector<std::size_t>> adj(n_spins);
    for (const auto &[a, b] : edges) {
        if (a < n_spins && b < n_spins) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    std::vector<bool> seen(n_spins, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop();
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                frontier.push(w);
            }
        }
    }
    return reached == n_spins;
}

void Topology::validate() const {
    if (n_spins < 1) {
        throw ValidationError("topology needs at least one spin");
    }
    std::set<Edge> seen;
    for (const auto &[a, b] : edges) {
        if (a >= n_spins || b >= n_spins) {
            throw ValidationError("edge " + pair_tag(a, b) +
                                  " references a spin beyond " +
                                  std::to_string(n_spins));
        }
        if (a == b) {
            throw ValidationError("self-loop on spin " + std::to_string(a));
        }
        if (!seen.insert(std::minmax(a, b)).second) {
            throw ValidationError("duplicate edge " + pair_tag(a, b));
        }
    }
    if (!connected()) {
        throw ValidationError("topology is not connected");
    }
}

void IsingSpec::validate() const {
    topology.validate();
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw ValidationError("Ising coupling J must be positive and finite");
    }
    if (!(field >= 0.0) || !std::isfinite(field)) {
        throw ValidationError("Ising field alpha must be >= 0 and finite");
    }
}

std::size_t model_width(const ModelSpec &model) {
    return std::visit(
        overloaded{[](const CentralSpinSpec &s) { return s.n_qubits; },
                   [](const IsingSpec &s) { return s.topology.n_spins; }},
        model);
}

std::string describe(const ModelSpec &model) {
    return std::visit(
        overloaded{
            [](const CentralSpinSpec &s) {
                return "central-spin-L" + std::to_string(s.bath_size());
            },
            [](const IsingSpec &s) {
                std::string shape = "graph" + std::to_string(s.topology.n_spins);
                if (s.topology.edges == Topology::chain(s.topology.n_spins).edges) {
                    shape = "chain" + std::to_string(s.topology.n_spins);
                } else if (s.topology.n_spins % 2 == 0 &&
                           s.topology.edges ==
                               Topology::ladder(s.topology.n_spins / 2).edges) {
                    shape = "ladder" + std::to_string(s.topology.n_spins);
                }
                std::string out = "ising-" + shape + "-alpha" +
                                  compact_number(s.field);
                if (s.coupling != 1.0) {
                    out += "-J" + compact_number(s.coupling);
                }
                return out;
            }},
        model);
}

std::string describe(const InitialStateSpec &initial) {
    return std::visit(
        overloaded{
            [](const TwoPES &s) { return "2pes-phi" + compact_number(s.phi); },
            [](const ThreePES &s) {
                return "3pes-chi" + compact_number(s.chi);
            },
            [](const CentralExcited &) { return std::string("central-excited"); },
            [](const Ferromagnetic &) { return std::string("ferromagnetic"); }},
        initial);
}

std::vector<std::vector<Edge>> bond_schedule(const Topology &topology) {
    std::vector<std::vector<Edge>> stages;
    // colours_at[v] = stages already touching spin v
    std::vector<std::set<std::size_t>> colours_at(topology.n_spins);
    for (const auto &edge : topology.edges) {
        std::size_t colour = 0;
        while (colours_at[edge.first].contains(colour) ||
               colours_at[edge.second].contains(colour)) {
            ++colour;
        }
        if (colour == stages.size()) {
            stages.emplace_back();
        }
        stages[colour].push_back(edge);
        colours_at[edge.first].insert(colour);
        colours_at[edge.second].insert(colour);
    }
    return stages;
}

Circuit rz_fragment(std::size_t qubit, double angle, const std::string &tag) {
    Circuit c(qubit + 1);
    c.append(Gate::u3(qubit, u3::hadamard, tag));
    c.append(Gate::u3(qubit, u3::rx(angle), tag));
    c.append(Gate::u3(qubit, u3::hadamard, tag));
    return c;
}

Circuit prepare_2pes(double phi, std::size_t qubit_a, std::size_t qubit_b) {
    require_distinct({qubit_a, qubit_b}, "prepare_2pes");
    require_finite(phi, "phi");
    const std::string tag = "2pes";
    Circuit c(width_for({qubit_a, qubit_b}));
    c.append(Gate::u3(qubit_a, u3::hadamard, tag));
    c.append(Gate::u3(qubit_a, u3::phase(phi), tag));
    c.append(Gate::u3(qubit_b, u3::pauli_x, tag));
    c.append(Gate::cnot(qubit_a, qubit_b, tag));
    return c;
}

Circuit prepare_3pes(double chi, const std::array<std::size_t, 3> &qubits) {
    const auto [a, m, b] = qubits;
    require_distinct({a, m, b}, "prepare_3pes");
    require_finite(chi, "chi");
    const std::string tag = "3pes";
    const U3Params a_gate{2.0 * std::acos(1.0 / std::sqrt(3.0)), chi, 0.0};
    const U3Params b_gate{u3::kPi / 4, 0.0, 0.0};
    const U3Params b_inverse{-u3::kPi / 4, 0.0, 0.0};

    Circuit c(width_for({a, m, b}));
    // Hub: (1/sqrt3)|0> - e^{i chi} sqrt(2/3)|1>
    c.append(Gate::u3(m, a_gate, tag));
    c.append(Gate::u3(m, u3::pauli_z, tag));
    // Controlled on hub = 0: Ry(pi/2) on a.
    c.append(Gate::u3(m, u3::pauli_x, tag));
    c.append(Gate::u3(a, b_gate, tag));
    c.append(Gate::cnot(m, a, tag));
    c.append(Gate::u3(a, b_inverse, tag));
    c.append(Gate::cnot(m, a, tag));
    c.append(Gate::u3(m, u3::pauli_x, tag));
    // |m0 a1> -> |m1 a1>
    c.append(Gate::cnot(a, m, tag));
    // Hub still 0 only on the |m0 a0> branch: excite b there.
    c.append(Gate::u3(m, u3::pauli_x, tag));
    c.append(Gate::cnot(m, b, tag));
    c.append(Gate::u3(m, u3::pauli_x, tag));
    // |m1 a1> -> |m0 a1>
    c.append(Gate::cnot(a, m, tag));
    return c;
}

Circuit relocate(std::size_t from, std::size_t to) {
    require_distinct({from, to}, "relocate");
    const std::string tag = "swap";
    Circuit c(width_for({from, to}));
    c.append(Gate::cnot(from, to, tag));
    c.append(Gate::cnot(to, from, tag));
    c.append(Gate::cnot(from, to, tag));
    return c;
}

Circuit xx_yy_block(std::size_t qubit_c, std::size_t qubit_j, double angle) {
    require_distinct({qubit_c, qubit_j}, "xx_yy_block");
    require_finite(angle, "angle");
    const std::string tag = "xxyy:" + pair_tag(qubit_c, qubit_j);
    Circuit c(width_for({qubit_c, qubit_j}));
    const auto coupling = [&](const U3Params &into_z, const U3Params &out_of_z) {
        c.append(Gate::u3(qubit_c, into_z, tag));
        c.append(Gate::u3(qubit_j, into_z, tag));
        c.append(Gate::cnot(qubit_c, qubit_j, tag));
        c.append(rz_fragment(qubit_j, 2.0 * angle, tag));
        c.append(Gate::cnot(qubit_c, qubit_j, tag));
        c.append(Gate::u3(qubit_c, out_of_z, tag));
        c.append(Gate::u3(qubit_j, out_of_z, tag));
    };
    // exp(-i a YY) acts first, then exp(-i a XX).
    coupling(u3::y_basis, u3::y_basis_inverse);
    coupling(u3::hadamard, u3::hadamard);
    return c;
}

Circuit zz_block(std::size_t qubit_i, std::size_t qubit_j, double angle) {
    require_distinct({qubit_i, qubit_j}, "zz_block");
    require_finite(angle, "angle");
    const std::string tag = "zz:" + pair_tag(qubit_i, qubit_j);
    Circuit c(width_for({qubit_i, qubit_j}));
    c.append(Gate::cnot(qubit_i, qubit_j, tag));
    c.append(rz_fragment(qubit_j, 2.0 * angle, tag));
    c.append(Gate::cnot(qubit_i, qubit_j, tag));
    return c;
}

Circuit trotter_central_spin(const CentralSpinSpec &spec, double tau,
                             std::size_t steps) {
    spec.validate();
    require_finite(tau, "tau");
    if (steps < 1) {
        throw ValidationError("Trotter number must be >= 1");
    }
    const double angle = tau / (2.0 * static_cast<double>(steps));
    Circuit c(spec.n_qubits);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::string prefix = "trotter_step:" + std::to_string(k) + "/";
        for (auto j : spec.bath) {
            append_tagged(c, xx_yy_block(spec.central, j, angle), prefix);
        }
    }
    return c;
}

Circuit trotter_ising(const IsingSpec &spec, double time, std::size_t steps) {
    spec.validate();
    require_finite(time, "time");
    if (steps < 1) {
        throw ValidationError("Trotter number must be >= 1");
    }
    const double dt = time / static_cast<double>(steps);
    const auto stages = bond_schedule(spec.topology);
    Circuit c(spec.topology.n_spins);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::string prefix = "trotter_step:" + std::to_string(k) + "/";
        // exp(+i alpha dt X) = Rx(-2 alpha dt)
        for (std::size_t q = 0; q < spec.topology.n_spins; ++q) {
            c.append(Gate::u3(q, u3::rx(-2.0 * spec.field * dt),
                              prefix + "field:(" + std::to_string(q) + ")"));
        }
        for (const auto &stage : stages) {
            for (const auto &[i, j] : stage) {
                append_tagged(c, zz_block(i, j, -spec.coupling * dt), prefix);
            }
        }
    }
    return c;
}

CompiledExperiment full_experiment(const InitialStateSpec &initial,
                                   const ModelSpec &model, double time,
                                   std::size_t steps) {
    if (const auto *ising = std::get_if<IsingSpec>(&model)) {
        if (!std::holds_alternative<Ferromagnetic>(initial)) {
            throw ValidationError("initial state " + describe(initial) +
                                  " is incompatible with the Ising model "
                                  "(only ferromagnetic is supported)");
        }
        CompiledExperiment out{trotter_ising(*ising, time, steps), {}, {}};
        out.observed.resize(ising->topology.n_spins);
        std::iota(out.observed.begin(), out.observed.end(), std::size_t{0});
        return out;
    }

    const auto &spec = std::get<CentralSpinSpec>(model);
    spec.validate();
    Circuit circuit(spec.n_qubits);
    CentralSpinLayout layout{spec.central, spec.bath, {}};

    const auto need_bath = [&](std::size_t wanted, const std::string &what) {
        if (spec.bath_size() != wanted) {
            throw ValidationError(what + " requires a central-spin model with L=" +
                                  std::to_string(wanted) + ", got L=" +
                                  std::to_string(spec.bath_size()));
        }
    };

    std::visit(
        overloaded{
            [&](const TwoPES &s) {
                need_bath(2, "2PES");
                layout.prep_qubits = {spec.bath[0], spec.bath[1]};
                append_tagged(circuit,
                              prepare_2pes(s.phi, spec.bath[0], spec.bath[1]),
                              "prep/");
            },
            [&](const ThreePES &s) {
                need_bath(3, "3PES");
                layout.prep_qubits = {spec.bath[0], spec.central, spec.bath[1]};
                append_tagged(circuit,
                              prepare_3pes(s.chi, {spec.bath[0], spec.central,
                                                   spec.bath[1]}),
                              "prep/");
                append_tagged(circuit, relocate(spec.central, spec.bath[2]),
                              "prep/");
            },
            [&](const CentralExcited &s) {
                need_bath(s.bath_size, "central-excited initial state");
                layout.prep_qubits = {spec.central};
                circuit.append(
                    Gate::u3(spec.central, u3::pauli_x, "prep/excite"));
            },
            [&](const Ferromagnetic &) {
                throw ValidationError("ferromagnetic initial state is "
                                      "incompatible with the central-spin "
                                      "model");
            }},
        initial);

    append_tagged(circuit, trotter_central_spin(spec, time, steps), "");
    return CompiledExperiment{std::move(circuit), {spec.central},
                              std::move(layout)};
}

ModelSpec model_from_name(const std::string &name) {
    const auto parse_count = [&](const std::string &digits) -> std::size_t {
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(),
                         [](char ch) { return ch >= '0' && ch <= '9'; })) {
            throw ValidationError("malformed model name '" + name + "'");
        }
        return std::stoul(digits);
    };
    if (name.starts_with("central-spin:L=")) {
        return CentralSpinSpec::compact(
            parse_count(name.substr(std::string("central-spin:L=").size())));
    }
    if (name.starts_with("ising:chain")) {
        IsingSpec spec{Topology::chain(
            parse_count(name.substr(std::string("ising:chain").size())))};
        spec.validate();
        return spec;
    }
    if (name.starts_with("ising:ladder")) {
        const auto n = parse_count(name.substr(std::string("ising:ladder").size()));
        if (n < 2 || n % 2 != 0) {
            throw ValidationError("ladder size must be even and >= 2");
        }
        IsingSpec spec{Topology::ladder(n / 2)};
        spec.validate();
        return spec;
    }
    throw ValidationError("unknown model '" + name +
                          "' (expected central-spin:L=<n>, ising:chain<n> or "
                          "ising:ladder<n>)");
}

} // namespace spindigit
