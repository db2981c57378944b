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
 * Turning measurements into plotted quantities: occupations, the offset-
 * subtracted difference Delta n, the normalized signal V, and the sweep loop
 * that produces a time series for one curve.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spindigit/models.hpp"
#include "spindigit/noise.hpp"
#include "spindigit/statevector.hpp"

namespace spindigit {

struct SeriesMeta {
    std::string model;
    std::string initial;
    std::string backend;
    std::size_t trotter_n = 1;
    /// 0 when values are exact probabilities.
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct TimeSeries {
    /// tau = g t for the central-spin model, t J for the Ising model.
    std::vector<double> times;
    std::vector<double> values;
    /// Binomial standard error sqrt(p (1 - p) / shots); 0 for exact values.
    std::vector<double> stderrs;
    /// Seed used for each point.
    std::vector<std::uint64_t> seeds;
    SeriesMeta meta;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }

    /// Equal lengths, times strictly increasing. Throws ValidationError.
    void validate() const;
};

/// Mean over `qubits` of the frequency of bit 1. Throws ValidationError for
/// an empty subset or empty histogram, IndexError for a qubit out of range.
[[nodiscard]] double occupation_from_counts(const MeasurementCounts &counts,
                                            const std::vector<std::size_t> &qubits);

/// values[i] - values[0]; errors combine in quadrature. Requires the first
/// time to be 0.
[[nodiscard]] TimeSeries delta_n(const TimeSeries &series);

enum class Normalizer { Max, Mean };

/// (n - n(0)) / D with D = max n - n(0) (Max) or mean(n - n(0)) over the
/// grid (Mean). Throws DegenerateSeriesError when D is not usable (D <= 0
/// for Max, D == 0 for Mean).
[[nodiscard]] TimeSeries normalized_v(const TimeSeries &series,
                                      Normalizer normalizer);

enum class Backend { Oracle, Ideal, Noisy };

/// Trotter: trotter_reference with the compiler's term order. Exact:
/// exp(-iHt), dense up to the oracle ceiling and matrix-free above it.
enum class OracleMode { Trotter, Exact };

[[nodiscard]] std::string backend_name(Backend backend);
/// "oracle", "ideal" or "noisy"; ValidationError otherwise.
[[nodiscard]] Backend parse_backend(const std::string &name);

struct TimeGrid {
    double start = 0.0;
    double stop = 2.0;
    std::size_t points = 20;

    /// points >= 1, finite bounds, stop > start when points > 1.
    void validate() const;
    /// Evenly spaced, both ends included.
    [[nodiscard]] std::vector<double> values() const;
};

struct ExperimentSpec {
    ModelSpec model = CentralSpinSpec::compact(2);
    InitialStateSpec initial = TwoPES{};
    Backend backend = Backend::Oracle;
    OracleMode oracle_mode = OracleMode::Trotter;
    std::size_t trotter_n = 1;
    TimeGrid grid;
    /// Sampled backends; 0 on the ideal backend means exact probabilities.
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    NoiseModel noise;
    unsigned threads = 0;

    void validate() const;
};

/// Qubits averaged for the observable: the central spin, or every Ising
/// spin.
[[nodiscard]] std::vector<std::size_t> observed_qubits(const ModelSpec &model);

/// One compiled circuit (or oracle evaluation) per grid time; point i uses
/// seed + i.
[[nodiscard]] TimeSeries assemble_series(const ExperimentSpec &spec);

/// "{model}_{initial}_{backend}_N{n}.csv"; the exact oracle is
/// "oracle-exact".
[[nodiscard]] std::string series_file_name(const ExperimentSpec &spec);

/// Header "tau,value,stderr,shots,seed", shortest round-trip numbers.
void write_csv(std::ostream &out, const TimeSeries &series);
[[nodiscard]] std::string to_csv(const TimeSeries &series);

} // namespace spindigit
