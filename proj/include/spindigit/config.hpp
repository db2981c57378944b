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
 * Experiment configuration: named figure presets, flat INI files, and
 * expansion of a parameter sweep into one ExperimentSpec per curve.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spindigit/analysis.hpp"
#include "spindigit/noise.hpp"

namespace spindigit {

enum class Postprocess { None, DeltaN, VMax, VMean };

[[nodiscard]] std::string postprocess_name(Postprocess p);
[[nodiscard]] Postprocess parse_postprocess(const std::string &name);

struct ExperimentConfig {
    /// Preset id this config started from ("fig8", ...), empty otherwise.
    std::string figure;
    std::string description;

    /// "central-spin", "ising:chain<n>", "ising:ladder<n>" or "ising:graph"
    /// (with `spins` and `edges`).
    std::string model = "central-spin";
    std::size_t spins = 0;
    std::vector<Edge> edges;
    /// Central-spin qubit layout: "hub" (5-qubit bow-tie) or "compact".
    std::string layout = "hub";
    /// Central-spin bath sizes; one curve per entry.
    std::vector<std::size_t> bath_sizes{2};
    double coupling = 1.0;
    /// Ising transverse fields; one curve per entry.
    std::vector<double> alphas{1.0};

    /// "2pes", "3pes", "central-excited" or "ferromagnetic".
    std::string initial = "2pes";
    /// phi (2PES) or chi (3PES) values; one curve per entry.
    std::vector<double> phases{0.0};

    Backend backend = Backend::Oracle;
    OracleMode oracle_mode = OracleMode::Trotter;
    std::size_t trotter_n = 1;
    TimeGrid grid;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    /// Preset name or INI path; used by the noisy backend only.
    std::string noise = "ibmqx4-like";
    /// Set when the config carried an inline [noise] section.
    std::optional<NoiseModel> inline_noise;
    Postprocess postprocess = Postprocess::None;
    std::string out_dir = "out";
    unsigned threads = 0;

    [[nodiscard]] NoiseModel noise_model() const;

    /// One spec per (bath size | alpha) x phase combination. Validates
    /// every spec; throws ValidationError or CapacityError.
    [[nodiscard]] std::vector<ExperimentSpec> curves() const;

    /// Stable key = value rendering of every field, used for hashing.
    [[nodiscard]] std::string canonical_text() const;
};

[[nodiscard]] std::vector<std::string> preset_names();

/// Throws ValidationError listing the valid names for an unknown preset.
[[nodiscard]] ExperimentConfig preset(const std::string &name);

/**
 * Flat INI, keys at top level or under [experiment]; an optional [noise]
 * section uses the parse_noise_model keys. List values are comma
 * separated, angles accept "pi" forms such as 3pi/4.
 *
 *   preset = fig8
 *   model = central-spin          ; or ising:chain8, ising:ladder16
 *   spins = 5                     ; ising:graph only
 *   edges = 0-1, 1-2, 2-3, 3-4    ; ising:graph only
 *   layout = hub                  ; or compact
 *   L = 1, 2, 3, 4
 *   J = 1
 *   alpha = 1, 2, 5
 *   initial = 2pes                ; 3pes, central-excited, ferromagnetic
 *   phase = 0, pi/4, pi/2, 3pi/4, pi
 *   backend = oracle              ; ideal, noisy
 *   oracle_mode = trotter         ; exact
 *   trotter_n = 1
 *   t_start = 0
 *   t_stop = 2
 *   points = 20
 *   shots = 8192
 *   seed = 1
 *   noise = ibmqx4-like           ; preset name or INI path
 *   postprocess = none            ; delta-n, v-max, v-mean
 *   out_dir = out
 */
[[nodiscard]] ExperimentConfig parse_config(std::istream &in);
[[nodiscard]] ExperimentConfig load_config(const std::string &path);

/// "pi", "-pi/2", "3pi/4", "3*pi/4", "0.5" -> radians.
[[nodiscard]] double parse_angle(const std::string &text);

/// 64-bit FNV-1a, rendered as 16 hex digits.
[[nodiscard]] std::string fnv1a_hex(const std::string &text);

} // namespace spindigit
