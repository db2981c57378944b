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
 * Monte-Carlo trajectory emulation of a noisy device: depolarizing gate
 * errors, T1/T2 decoherence between layers and readout confusion. Also the
 * linear per-qubit error budget.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spindigit/circuit.hpp"
#include "spindigit/statevector.hpp"

namespace spindigit {

/// Rows are the true state, columns the reported one:
/// {P(0|0), P(1|0), P(0|1), P(1|1)}.
using ReadoutConfusion = std::array<double, 4>;

inline constexpr ReadoutConfusion kPerfectReadout{1.0, 0.0, 0.0, 1.0};

struct NoiseModel {
    static constexpr double kNever = std::numeric_limits<double>::infinity();

    // Device-wide defaults.
    double p_cnot = 0.0;
    double p_u3 = 0.0;
    /// Relaxation and dephasing times; non-positive or infinite disables.
    double t1 = kNever;
    double t2 = kNever;
    double dur_u3 = 0.0;
    double dur_cnot = 0.0;
    ReadoutConfusion readout = kPerfectReadout;

    // Overrides. CNOT edges are undirected and keyed by (min, max).
    std::map<std::pair<std::size_t, std::size_t>, double> p_cnot_edge;
    std::map<std::size_t, double> p_u3_qubit;
    std::map<std::size_t, double> t1_qubit;
    std::map<std::size_t, double> t2_qubit;
    std::map<std::size_t, ReadoutConfusion> readout_qubit;

    [[nodiscard]] double cnot_error(std::size_t a, std::size_t b) const;
    [[nodiscard]] double u3_error(std::size_t qubit) const;
    [[nodiscard]] double t1_of(std::size_t qubit) const;
    [[nodiscard]] double t2_of(std::size_t qubit) const;
    [[nodiscard]] const ReadoutConfusion &readout_of(std::size_t qubit) const;

    /// True when no channel can alter a trajectory.
    [[nodiscard]] bool is_noiseless() const;

    /// Probabilities in [0, 1], durations >= 0, t2 <= 2 t1 wherever both
    /// are enabled, confusion rows summing to 1. Throws ValidationError.
    void validate() const;
};

[[nodiscard]] NoiseModel ideal_noise();

/// Order-of-magnitude placeholders for a 2018-era 5-qubit device (times in
/// microseconds): p_cnot 0.03, p_u3 0.002, t1 50, t2 40, U3 0.1, CNOT 0.4.
/// Not a calibration.
[[nodiscard]] NoiseModel ibmqx4_like_noise();

/// "ideal" or "ibmqx4-like"; ValidationError otherwise.
[[nodiscard]] NoiseModel noise_preset(const std::string &name);
[[nodiscard]] std::vector<std::string> noise_preset_names();

/**
 * Reads a flat INI description, keys either at top level or in a [noise]
 * section:
 *
 *   preset = ibmqx4-like        ; optional starting point
 *   p_cnot = 0.03               ; p_u3, t1, t2, dur_u3, dur_cnot alike
 *   readout_p01 = 0.02          ; P(report 1 | true 0)
 *   readout_p10 = 0.05          ; P(report 0 | true 1)
 *   p_cnot.0-2 = 0.05           ; per-edge override
 *   t1.3 = 40                   ; per-qubit override (p_u3, t2, readout_*)
 *
 * Unknown keys raise ValidationError; the result is validated.
 */
[[nodiscard]] NoiseModel parse_noise_model(std::istream &in);
[[nodiscard]] NoiseModel load_noise_model(const std::string &path);

/**
 * Samples `shots` trajectories of `circuit` started from |0...0>. Per shot:
 * after each gate, with the gate's error probability, a uniformly random
 * non-identity Pauli on its support; after each layer, amplitude- and
 * phase-damping jumps for the layer duration (the longest gate in it) on
 * every qubit; the sampled bitstring then passes through readout confusion.
 *
 * Shot s uses shot_rng(seed, s, Measurement) for the outcome and
 * shot_rng(seed, s, Noise) for everything else, so results do not depend on
 * `threads`, and a noiseless model reproduces sample() exactly.
 * `threads` = 0 picks the hardware concurrency.
 */
[[nodiscard]] MeasurementCounts run_noisy(const Circuit &circuit,
                                          const NoiseModel &noise,
                                          std::uint64_t shots,
                                          std::uint64_t seed,
                                          unsigned threads = 0);

struct ErrorBudget {
    /// Linear estimate; may exceed 1.
    double estimate = 0.0;

    [[nodiscard]] bool saturated() const noexcept { return estimate > 1.0; }
    [[nodiscard]] double probability() const noexcept {
        return estimate > 1.0 ? 1.0 : estimate;
    }
};

/// 2 p_cnot n_neig N nu: each of the n_neig bonds of a qubit costs nu
/// two-qubit exponentials per step, each of which uses two CNOTs.
/// Throws ValidationError on negative input.
[[nodiscard]] ErrorBudget error_budget(double p_cnot, double n_neig,
                                       double trotter_n, double nu);

/// p_cnot times each qubit's CNOT count from a census.
[[nodiscard]] std::map<std::size_t, ErrorBudget>
budget_from_census(const GateCensus &census, double p_cnot);

} // namespace spindigit
