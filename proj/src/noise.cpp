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

#include "spindigit/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>
#include <type_traits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ini.hpp"
#include "spindigit/error.hpp"

namespace spindigit {

namespace {

template <class K, class V>
V lookup(const std::map<K, V> &overrides, const std::type_identity_t<K> &key,
         const V &fallback) {
    const auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
}

bool enabled(double time) { return time > 0.0 && std::isfinite(time); }

void check_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(what + " must be in [0, 1], got " +
                              std::to_string(p));
    }
}

void check_confusion(const ReadoutConfusion &m, const std::string &what) {
    for (double p : m) {
        check_probability(p, what + " entry");
    }
    for (std::size_t row = 0; row < 2; ++row) {
        if (std::abs(m[2 * row] + m[2 * row + 1] - 1.0) > 1e-12) {
            throw ValidationError(what + " row " + std::to_string(row) +
                                  " does not sum to 1");
        }
    }
}

void check_times(double t1, double t2, const std::string &where) {
    if (std::isnan(t1) || std::isnan(t2)) {
        throw ValidationError("t1/t2 " + where + " must not be NaN");
    }
    if (enabled(t1) && enabled(t2) && t2 > 2.0 * t1) {
        throw ValidationError("t2 must not exceed 2*t1 " + where);
    }
}

// Uniform non-identity Pauli on one or two qubits.
void random_pauli(QuantumState &state, const Gate &gate, std::mt19937_64 &rng) {
    static constexpr std::array<Pauli, 4> kAll{Pauli::I, Pauli::X, Pauli::Y,
                                               Pauli::Z};
    if (gate.arity() == 1) {
        std::uniform_int_distribution<int> pick(1, 3);
        apply_pauli(state, gate.qubits[0], kAll[pick(rng)]);
        return;
    }
    std::uniform_int_distribution<int> pick(1, 15);
    const int k = pick(rng);
    apply_pauli(state, gate.qubits[0], kAll[k / 4]);
    apply_pauli(state, gate.qubits[1], kAll[k % 4]);
}

void scale_qubit(QuantumState &state, std::size_t qubit, Complex on0,
                 Complex on1) {
    apply_matrix(state, qubit, {on0, 0.0, 0.0, on1});
}

void decohere(QuantumState &state, const NoiseModel &noise, double duration,
              std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t q = 0; q < state.n_qubits(); ++q) {
        const double t1 = noise.t1_of(q);
        const double t2 = noise.t2_of(q);
        if (enabled(t1)) {
            const double gamma = -std::expm1(-duration / t1);
            const double excited = excited_population(state, q);
            const double jump = gamma * excited;
            if (uniform(rng) < jump) {
                // |1> -> |0>
                apply_matrix(state, q, {0.0, std::sqrt(gamma / jump), 0.0, 0.0});
            } else {
                const double keep = std::sqrt(1.0 - gamma);
                const double norm = std::sqrt(1.0 - jump);
                scale_qubit(state, q, 1.0 / norm, keep / norm);
            }
        }
        if (enabled(t2)) {
            // Pure dephasing rate 1/T2 - 1/(2 T1).
            const double rate =
                1.0 / t2 - (enabled(t1) ? 1.0 / (2.0 * t1) : 0.0);
            if (rate > 0.0) {
                const double p_flip = -std::expm1(-duration * rate) / 2.0;
                if (uniform(rng) < p_flip) {
                    apply_pauli(state, q, Pauli::Z);
                }
            }
        }
    }
}

struct Trajectories {
    const Circuit &circuit;
    const NoiseModel &noise;
    std::uint64_t seed;
    std::vector<double> layer_duration;
    bool any_decoherence = false;

    std::size_t run_shot(std::uint64_t shot) const {
        auto rng = shot_rng(seed, shot, RngStream::Noise);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        QuantumState state(circuit.n_qubits());
        const auto &layers = circuit.layers();
        for (std::size_t l = 0; l < layers.size(); ++l) {
            for (const auto &gate : layers[l]) {
                apply_gate(state, gate);
                const double p =
                    gate.kind == GateKind::CNOT
                        ? noise.cnot_error(gate.qubits[0], gate.qubits[1])
                        : noise.u3_error(gate.qubits[0]);
                if (p > 0.0 && uniform(rng) < p) {
                    random_pauli(state, gate, rng);
                }
            }
            if (any_decoherence && layer_duration[l] > 0.0) {
                decohere(state, noise, layer_duration[l], rng);
            }
        }
        const auto cdf = cumulative_probabilities(state);
        auto measure = shot_rng(seed, shot, RngStream::Measurement);
        std::size_t outcome = draw_outcome(cdf, uniform(measure));
        for (std::size_t q = 0; q < circuit.n_qubits(); ++q) {
            const auto &m = noise.readout_of(q);
            const std::size_t bit = (outcome >> q) & 1U;
            const double flip = bit == 0 ? m[1] : m[2];
            if (flip > 0.0 && uniform(rng) < flip) {
                outcome ^= std::size_t{1} << q;
            }
        }
        return outcome;
    }
};

} // namespace

double NoiseModel::cnot_error(std::size_t a, std::size_t b) const {
    return lookup(p_cnot_edge, std::minmax(a, b), p_cnot);
}

double NoiseModel::u3_error(std::size_t qubit) const {
    return lookup(p_u3_qubit, qubit, p_u3);
}

double NoiseModel::t1_of(std::size_t qubit) const {
    return lookup(t1_qubit, qubit, t1);
}

double NoiseModel::t2_of(std::size_t qubit) const {
    return lookup(t2_qubit, qubit, t2);
}

const ReadoutConfusion &NoiseModel::readout_of(std::size_t qubit) const {
    const auto it = readout_qubit.find(qubit);
    return it == readout_qubit.end() ? readout : it->second;
}

bool NoiseModel::is_noiseless() const {
    const auto zero = [](const auto &kv) { return kv.second == 0.0; };
    const auto off = [](const auto &kv) { return !enabled(kv.second); };
    const auto perfect = [](const auto &kv) {
        return kv.second == kPerfectReadout;
    };
    return p_cnot == 0.0 && p_u3 == 0.0 && !enabled(t1) && !enabled(t2) &&
           readout == kPerfectReadout &&
           std::all_of(p_cnot_edge.begin(), p_cnot_edge.end(), zero) &&
           std::all_of(p_u3_qubit.begin(), p_u3_qubit.end(), zero) &&
           std::all_of(t1_qubit.begin(), t1_qubit.end(), off) &&
           std::all_of(t2_qubit.begin(), t2_qubit.end(), off) &&
           std::all_of(readout_qubit.begin(), readout_qubit.end(), perfect);
}

void NoiseModel::validate() const {
    check_probability(p_cnot, "p_cnot");
    check_probability(p_u3, "p_u3");
    for (const auto &[edge, p] : p_cnot_edge) {
        check_probability(p, "p_cnot on edge " + std::to_string(edge.first) +
                                 "-" + std::to_string(edge.second));
    }
    for (const auto &[q, p] : p_u3_qubit) {
        check_probability(p, "p_u3 on qubit " + std::to_string(q));
    }
    if (!(dur_u3 >= 0.0) || !(dur_cnot >= 0.0) || !std::isfinite(dur_u3) ||
        !std::isfinite(dur_cnot)) {
        throw ValidationError("gate durations must be finite and >= 0");
    }
    check_times(t1, t2, "(device default)");
    std::set<std::size_t> qubits;
    for (const auto &kv : t1_qubit) {
        qubits.insert(kv.first);
    }
    for (const auto &kv : t2_qubit) {
        qubits.insert(kv.first);
    }
    for (auto q : qubits) {
        check_times(t1_of(q), t2_of(q), "on qubit " + std::to_string(q));
    }
    check_confusion(readout, "readout confusion");
    for (const auto &[q, m] : readout_qubit) {
        check_confusion(m, "readout confusion on qubit " + std::to_string(q));
    }
}

NoiseModel ideal_noise() { return NoiseModel{}; }

NoiseModel ibmqx4_like_noise() {
    NoiseModel m;
    m.p_cnot = 0.03;
    m.p_u3 = 0.002;
    m.t1 = 50.0;
    m.t2 = 40.0;
    m.dur_u3 = 0.1;
    m.dur_cnot = 0.4;
    return m;
}

std::vector<std::string> noise_preset_names() { return {"ideal", "ibmqx4-like"}; }

NoiseModel noise_preset(const std::string &name) {
    if (name == "ideal") {
        return ideal_noise();
    }
    if (name == "ibmqx4-like") {
        return ibmqx4_like_noise();
    }
    throw ValidationError("unknown noise preset '" + name +
                          "' (valid: ideal, ibmqx4-like)");
}

NoiseModel parse_noise_model(std::istream &in) {
    namespace pt = boost::property_tree;
    pt::ptree root;
    try {
        auto cleaned = detail::strip_inline_comments(in);
        pt::read_ini(cleaned, root);
    } catch (const pt::ini_parser_error &e) {
        throw ValidationError("noise config: " + std::string(e.what()));
    }
    const pt::ptree *section = &root;
    if (const auto child = root.get_child_optional("noise")) {
        section = &*child;
    }

    NoiseModel m;
    if (const auto it = section->find("preset"); it != section->not_found()) {
        m = noise_preset(it->second.data());
    }

    const auto number = [](const std::string &key, const std::string &text) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument(text);
            }
            return v;
        } catch (const std::logic_error &) {
            throw ValidationError("noise config: key '" + key +
                                  "' is not a number: '" + text + "'");
        }
    };
    const auto index = [](const std::string &key, const std::string &text) {
        if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) {
                return c >= '0' && c <= '9';
            })) {
            throw ValidationError("noise config: bad qubit index in '" + key +
                                  "'");
        }
        return static_cast<std::size_t>(std::stoul(text));
    };

    for (const auto &[key, node] : *section) {
        if (key == "preset") {
            continue;
        }
        if (!node.empty()) {
            throw ValidationError("noise config: unexpected section '" + key +
                                  "'");
        }
        const double v = number(key, node.data());
        const auto dot = key.find('.');
        const std::string field = key.substr(0, dot);
        if (dot == std::string::npos) {
            if (field == "p_cnot") {
                m.p_cnot = v;
            } else if (field == "p_u3") {
                m.p_u3 = v;
            } else if (field == "t1") {
                m.t1 = v;
            } else if (field == "t2") {
                m.t2 = v;
            } else if (field == "dur_u3") {
                m.dur_u3 = v;
            } else if (field == "dur_cnot") {
                m.dur_cnot = v;
            } else if (field == "readout_p01") {
                m.readout[1] = v;
                m.readout[0] = 1.0 - v;
            } else if (field == "readout_p10") {
                m.readout[2] = v;
                m.readout[3] = 1.0 - v;
            } else {
                throw ValidationError("noise config: unknown key '" + key + "'");
            }
            continue;
        }
        const std::string target = key.substr(dot + 1);
        if (field == "p_cnot") {
            const auto dash = target.find('-');
            if (dash == std::string::npos) {
                throw ValidationError("noise config: '" + key +
                                      "' needs an edge like p_cnot.0-1");
            }
            const auto a = index(key, target.substr(0, dash));
            const auto b = index(key, target.substr(dash + 1));
            m.p_cnot_edge[std::minmax(a, b)] = v;
            continue;
        }
        const auto q = index(key, target);
        if (field == "p_u3") {
            m.p_u3_qubit[q] = v;
        } else if (field == "t1") {
            m.t1_qubit[q] = v;
        } else if (field == "t2") {
            m.t2_qubit[q] = v;
        } else if (field == "readout_p01" || field == "readout_p10") {
            auto &r = m.readout_qubit.try_emplace(q, m.readout).first->second;
            if (field == "readout_p01") {
                r[1] = v;
                r[0] = 1.0 - v;
            } else {
                r[2] = v;
                r[3] = 1.0 - v;
            }
        } else {
            throw ValidationError("noise config: unknown key '" + key + "'");
        }
    }
    m.validate();
    return m;
}

NoiseModel load_noise_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open noise config '" + path + "'");
    }
    return parse_noise_model(in);
}

MeasurementCounts run_noisy(const Circuit &circuit, const NoiseModel &noise,
                            std::uint64_t shots, std::uint64_t seed,
                            unsigned threads) {
    noise.validate();
    if (shots < 1) {
        throw ValidationError("shots must be >= 1");
    }
    if (noise.is_noiseless()) {
        return sample(run(circuit, QuantumState(circuit.n_qubits())), shots,
                      seed);
    }

    Trajectories traj{circuit, noise, seed, {}, false};
    for (const auto &layer : circuit.layers()) {
        double d = 0.0;
        for (const auto &g : layer) {
            d = std::max(d, g.kind == GateKind::CNOT ? noise.dur_cnot
                                                     : noise.dur_u3);
        }
        traj.layer_duration.push_back(d);
    }
    for (std::size_t q = 0; q < circuit.n_qubits(); ++q) {
        traj.any_decoherence |= enabled(noise.t1_of(q)) || enabled(noise.t2_of(q));
    }

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, shots));
    std::vector<std::map<std::size_t, std::uint64_t>> partial(threads);
    const auto work = [&](unsigned t) {
        const std::uint64_t begin = shots * t / threads;
        const std::uint64_t end = shots * (t + 1) / threads;
        for (std::uint64_t s = begin; s < end; ++s) {
            ++partial[t][traj.run_shot(s)];
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
    }

    MeasurementCounts counts;
    counts.n_qubits = circuit.n_qubits();
    counts.shots = shots;
    for (const auto &p : partial) {
        for (const auto &[index, n] : p) {
            counts.histogram[bitstring(index, circuit.n_qubits())] += n;
        }
    }
    return counts;
}

ErrorBudget error_budget(double p_cnot, double n_neig, double trotter_n,
                         double nu) {
    for (double v : {p_cnot, n_neig, trotter_n, nu}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError("error_budget inputs must be finite and >= 0");
        }
    }
    return ErrorBudget{2.0 * p_cnot * n_neig * trotter_n * nu};
}

std::map<std::size_t, ErrorBudget> budget_from_census(const GateCensus &census,
                                                      double p_cnot) {
    if (!(p_cnot >= 0.0)) {
        throw ValidationError("p_cnot must be >= 0");
    }
    std::map<std::size_t, ErrorBudget> out;
    for (const auto &[q, n] : census.cnot_per_qubit) {
        out[q] = ErrorBudget{p_cnot * static_cast<double>(n)};
    }
    return out;
}

} // namespace spindigit
