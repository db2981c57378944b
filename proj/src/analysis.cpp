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

#include "spindigit/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "spindigit/error.hpp"
#include "spindigit/oracle.hpp"

namespace spindigit {

namespace {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void require_origin(const TimeSeries &series, const char *what) {
    series.validate();
    if (series.size() == 0 || series.times.front() != 0.0) {
        throw ValidationError(std::string(what) +
                              " needs a series starting at tau = 0");
    }
}

double mean_population(const QuantumState &state,
                       const std::vector<std::size_t> &qubits) {
    double sum = 0.0;
    for (auto q : qubits) {
        sum += excited_population(state, q);
    }
    return sum / static_cast<double>(qubits.size());
}

double binomial_stderr(double p, std::uint64_t shots) {
    const double q = std::clamp(p, 0.0, 1.0);
    return std::sqrt(q * (1.0 - q) / static_cast<double>(shots));
}

} // namespace

void TimeSeries::validate() const {
    if (values.size() != times.size() || stderrs.size() != times.size() ||
        seeds.size() != times.size()) {
        throw ValidationError("time series columns have unequal lengths");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw ValidationError("time series times must be strictly "
                                  "increasing");
        }
    }
}

double occupation_from_counts(const MeasurementCounts &counts,
                              const std::vector<std::size_t> &qubits) {
    if (qubits.empty()) {
        throw ValidationError("occupation needs at least one qubit");
    }
    for (auto q : qubits) {
        if (q >= counts.n_qubits) {
            throw IndexError("qubit " + std::to_string(q) + " outside a " +
                             std::to_string(counts.n_qubits) +
                             "-qubit measurement");
        }
    }
    std::uint64_t total = 0;
    std::vector<std::uint64_t> ones(qubits.size(), 0);
    for (const auto &[bits, n] : counts.histogram) {
        if (bits.size() != counts.n_qubits) {
            throw ValidationError("bitstring '" + bits +
                                  "' does not match the register width");
        }
        total += n;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            // Qubit 0 is the rightmost character.
            if (bits[bits.size() - 1 - qubits[k]] == '1') {
                ones[k] += n;
            }
        }
    }
    if (total == 0) {
        throw ValidationError("occupation of an empty histogram");
    }
    double sum = 0.0;
    for (auto n : ones) {
        sum += static_cast<double>(n) / static_cast<double>(total);
    }
    return sum / static_cast<double>(qubits.size());
}

TimeSeries delta_n(const TimeSeries &series) {
    require_origin(series, "delta_n");
    TimeSeries out = series;
    const double n0 = series.values.front();
    const double s0 = series.stderrs.front();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.values[i] = series.values[i] - n0;
        out.stderrs[i] = i == 0 ? 0.0 : std::hypot(series.stderrs[i], s0);
    }
    return out;
}

TimeSeries normalized_v(const TimeSeries &series, Normalizer normalizer) {
    require_origin(series, "normalized_v");
    const double n0 = series.values.front();
    double denominator = 0.0;
    if (normalizer == Normalizer::Max) {
        denominator =
            *std::max_element(series.values.begin(), series.values.end()) - n0;
        if (!(denominator > 0.0)) {
            throw DegenerateSeriesError(
                "normalized_v: max n(tau) does not exceed n(0)");
        }
    } else {
        double sum = 0.0;
        for (double v : series.values) {
            sum += v - n0;
        }
        denominator = sum / static_cast<double>(series.size());
        if (denominator == 0.0 || !std::isfinite(denominator)) {
            throw DegenerateSeriesError(
                "normalized_v: mean of n(tau) - n(0) vanishes");
        }
    }
    TimeSeries out = delta_n(series);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.values[i] = (series.values[i] - n0) / denominator;
        out.stderrs[i] /= std::abs(denominator);
    }
    return out;
}

std::string backend_name(Backend backend) {
    switch (backend) {
    case Backend::Oracle:
        return "oracle";
    case Backend::Ideal:
        return "ideal";
    case Backend::Noisy:
        return "noisy";
    }
    return "unknown";
}

Backend parse_backend(const std::string &name) {
    if (name == "oracle") {
        return Backend::Oracle;
    }
    if (name == "ideal") {
        return Backend::Ideal;
    }
    if (name == "noisy") {
        return Backend::Noisy;
    }
    throw ValidationError("unknown backend '" + name +
                          "' (valid: oracle, ideal, noisy)");
}

void TimeGrid::validate() const {
    if (points < 1) {
        throw ValidationError("time grid needs at least one point");
    }
    if (!std::isfinite(start) || !std::isfinite(stop)) {
        throw ValidationError("time grid bounds must be finite");
    }
    if (points > 1 && !(stop > start)) {
        throw ValidationError("time grid stop must exceed start");
    }
}

std::vector<double> TimeGrid::values() const {
    validate();
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = points == 1 ? start
                             : start + (stop - start) * static_cast<double>(i) /
                                           static_cast<double>(points - 1);
    }
    return out;
}

void ExperimentSpec::validate() const {
    std::visit([](const auto &m) { m.validate(); }, model);
    grid.validate();
    if (trotter_n < 1) {
        throw ValidationError("Trotter number must be >= 1");
    }
    if (backend == Backend::Noisy && shots < 1) {
        throw ValidationError("the noisy backend needs shots >= 1");
    }
    if (backend == Backend::Noisy) {
        noise.validate();
    }
    if (model_width(model) > max_qubits()) {
        throw CapacityError("model needs " + std::to_string(model_width(model)) +
                            " qubits, capacity is " +
                            std::to_string(max_qubits()));
    }
    // Surfaces model / initial-state mismatches before any execution.
    (void)full_experiment(initial, model, 0.0, 1);
}

std::vector<std::size_t> observed_qubits(const ModelSpec &model) {
    if (const auto *cs = std::get_if<CentralSpinSpec>(&model)) {
        return {cs->central};
    }
    std::vector<std::size_t> all(model_width(model));
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
}

TimeSeries assemble_series(const ExperimentSpec &spec) {
    spec.validate();
    const auto times = spec.grid.values();
    const auto observed = observed_qubits(spec.model);

    TimeSeries series;
    series.meta.model = describe(spec.model);
    series.meta.initial = describe(spec.initial);
    series.meta.backend = backend_name(spec.backend);
    if (spec.backend == Backend::Oracle && spec.oracle_mode == OracleMode::Exact) {
        series.meta.backend = "oracle-exact";
    }
    series.meta.trotter_n = spec.trotter_n;
    series.meta.shots = spec.backend == Backend::Oracle ? 0 : spec.shots;
    series.meta.seed = spec.seed;

    std::optional<PauliSum> terms;
    std::optional<QuantumState> psi0;
    std::optional<SpectralPropagator> propagator;
    if (spec.backend == Backend::Oracle) {
        terms = model_terms(spec.model);
        psi0 = initial_state_vector(spec.initial, spec.model);
        if (spec.oracle_mode == OracleMode::Exact &&
            model_width(spec.model) <= kDenseDefaultCeiling) {
            propagator.emplace(
                build_hamiltonian(*terms, model_width(spec.model)));
        }
    }

    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const std::uint64_t seed = spec.seed + i;
        double value = 0.0;
        double err = 0.0;
        switch (spec.backend) {
        case Backend::Oracle: {
            QuantumState state = *psi0;
            if (spec.oracle_mode == OracleMode::Trotter) {
                state = trotter_reference(*terms, *psi0, t, spec.trotter_n);
            } else if (propagator) {
                state = propagator->evolve(*psi0, t);
            } else {
                state = evolve_matrix_free_adaptive(*terms, *psi0, t).state;
            }
            value = mean_population(state, observed);
            break;
        }
        case Backend::Ideal: {
            const auto exp = full_experiment(spec.initial, spec.model, t,
                                             spec.trotter_n);
            const auto state =
                run(exp.circuit, QuantumState(exp.circuit.n_qubits()));
            if (spec.shots == 0) {
                value = mean_population(state, observed);
            } else {
                value = occupation_from_counts(sample(state, spec.shots, seed),
                                               observed);
                err = binomial_stderr(value, spec.shots);
            }
            break;
        }
        case Backend::Noisy: {
            const auto exp = full_experiment(spec.initial, spec.model, t,
                                             spec.trotter_n);
            value = occupation_from_counts(
                run_noisy(exp.circuit, spec.noise, spec.shots, seed,
                          spec.threads),
                observed);
            err = binomial_stderr(value, spec.shots);
            break;
        }
        }
        series.times.push_back(t);
        series.values.push_back(value);
        series.stderrs.push_back(err);
        series.seeds.push_back(seed);
    }
    return series;
}

std::string series_file_name(const ExperimentSpec &spec) {
    std::string backend = backend_name(spec.backend);
    if (spec.backend == Backend::Oracle && spec.oracle_mode == OracleMode::Exact) {
        backend = "oracle-exact";
    }
    return describe(spec.model) + "_" + describe(spec.initial) + "_" + backend +
           "_N" + std::to_string(spec.trotter_n) + ".csv";
}

void write_csv(std::ostream &out, const TimeSeries &series) {
    series.validate();
    out << "tau,value,stderr,shots,seed\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_number(series.times[i]) << ','
            << format_number(series.values[i]) << ','
            << format_number(series.stderrs[i]) << ',' << series.meta.shots
            << ',' << series.seeds[i] << '\n';
    }
}

std::string to_csv(const TimeSeries &series) {
    std::ostringstream out;
    write_csv(out, series);
    return out.str();
}

} // namespace spindigit
