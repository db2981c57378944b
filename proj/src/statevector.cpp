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

#include "spindigit/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "spindigit/error.hpp"

namespace spindigit {

namespace {

constexpr std::size_t kDefaultMaxQubits = 24;
constexpr std::size_t kHardMaxQubits = 40;

void check_qubit(const QuantumState &state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw IndexError("qubit " + std::to_string(qubit) +
                         " out of range for " +
                         std::to_string(state.n_qubits()) + "-qubit state");
    }
}

// Index with a zero inserted at bit position `qubit`.
inline std::size_t insert_zero(std::size_t i, std::size_t qubit) {
    const std::size_t low = i & ((std::size_t{1} << qubit) - 1);
    return ((i >> qubit) << (qubit + 1)) | low;
}

} // namespace

Matrix2 u3_matrix(const U3Params &p) {
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    return {Complex(c, 0.0), -std::polar(s, p.lambda), std::polar(s, p.phi),
            std::polar(c, p.phi + p.lambda)};
}

std::size_t max_qubits() {
    if (const char *env = std::getenv("SPINDIGIT_MAX_QUBITS")) {
        char *end = nullptr;
        const unsigned long value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1 &&
            value <= kHardMaxQubits) {
            return value;
        }
    }
    return kDefaultMaxQubits;
}

QuantumState::QuantumState(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits()) {
        throw CapacityError("qubit count " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(max_qubits()) +
                            "]");
    }
    amplitudes_.assign(std::size_t{1} << n_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

QuantumState QuantumState::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw ValidationError("amplitude vector length " + std::to_string(dim) +
                              " is not 2^n with n >= 1");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    if (n > max_qubits()) {
        throw CapacityError("qubit count " + std::to_string(n) +
                            " exceeds ceiling " + std::to_string(max_qubits()));
    }
    QuantumState state;
    state.n_qubits_ = n;
    state.amplitudes_ = std::move(amplitudes);
    return state;
}

double QuantumState::norm_squared() const noexcept {
    double sum = 0.0;
    for (const Complex &a : amplitudes_) {
        sum += std::norm(a);
    }
    return sum;
}

QuantumState new_zero_state(std::size_t n_qubits) {
    return QuantumState(n_qubits);
}

QuantumState basis_state(std::size_t n_qubits, std::size_t index) {
    QuantumState state(n_qubits);
    if (index >= state.dimension()) {
        throw IndexError("basis index " + std::to_string(index) +
                         " out of range");
    }
    auto amps = state.amplitudes();
    amps[0] = 0.0;
    amps[index] = 1.0;
    return state;
}

void apply_matrix(QuantumState &state, std::size_t qubit, const Matrix2 &m) {
    check_qubit(state, qubit);
    auto amps = state.amplitudes();
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t half = state.dimension() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = insert_zero(i, qubit);
        const std::size_t i1 = i0 | stride;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_u3(QuantumState &state, std::size_t qubit, const U3Params &params) {
    apply_matrix(state, qubit, u3_matrix(params));
}

void apply_cnot(QuantumState &state, std::size_t control, std::size_t target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw ValidationError("CNOT control and target are both qubit " +
                              std::to_string(control));
    }
    auto amps = state.amplitudes();
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t half = state.dimension() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = insert_zero(i, target);
        if (i0 & cmask) {
            std::swap(amps[i0], amps[i0 | tmask]);
        }
    }
}

void apply_pauli(QuantumState &state, std::size_t qubit, Pauli pauli) {
    check_qubit(state, qubit);
    auto amps = state.amplitudes();
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t half = state.dimension() / 2;
    const Complex i_unit(0.0, 1.0);
    switch (pauli) {
    case Pauli::I:
        return;
    case Pauli::X:
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t i0 = insert_zero(i, qubit);
            std::swap(amps[i0], amps[i0 | mask]);
        }
        return;
    case Pauli::Y:
        // Y|0> = i|1>, Y|1> = -i|0>
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t i0 = insert_zero(i, qubit);
            const Complex a0 = amps[i0];
            amps[i0] = -i_unit * amps[i0 | mask];
            amps[i0 | mask] = i_unit * a0;
        }
        return;
    case Pauli::Z:
        for (std::size_t i = 0; i < half; ++i) {
            amps[insert_zero(i, qubit) | mask] *= -1.0;
        }
        return;
    }
}

double excited_population(const QuantumState &state, std::size_t qubit) {
    check_qubit(state, qubit);
    const auto amps = state.amplitudes();
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t half = state.dimension() / 2;
    double p = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        p += std::norm(amps[insert_zero(i, qubit) | mask]);
    }
    return p;
}

Complex inner_product(const QuantumState &a, const QuantumState &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ValidationError("dimension mismatch: " +
                              std::to_string(a.n_qubits()) + " vs " +
                              std::to_string(b.n_qubits()) + " qubits");
    }
    Complex sum{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::conj(x[i]) * y[i];
    }
    return sum;
}

double fidelity(const QuantumState &a, const QuantumState &b) {
    return std::norm(inner_product(a, b));
}

double phase_insensitive_distance(const QuantumState &a,
                                  const QuantumState &b) {
    const Complex overlap = inner_product(b, a);
    const double magnitude = std::abs(overlap);
    const Complex phase = magnitude > 0.0 ? overlap / magnitude : Complex(1.0);
    // Direct sum rather than 2 - 2|<a|b>|, which cancels to ~1e-8.
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::norm(x[i] - phase * y[i]);
    }
    return std::sqrt(sum);
}

std::string bitstring(std::size_t index, std::size_t n_qubits) {
    std::string bits(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if ((index >> q) & 1U) {
            bits[n_qubits - 1 - q] = '1';
        }
    }
    return bits;
}

std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t shot,
                         RngStream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shot),
                      static_cast<std::uint32_t>(shot >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

std::vector<double> cumulative_probabilities(const QuantumState &state) {
    std::vector<double> cdf(state.dimension());
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    return cdf;
}

std::size_t draw_outcome(std::span<const double> cdf, double u) {
    // u is drawn on [0, 1); scale to the actual total so rounding drift in
    // the cumulative sum can never push u past the last bin.
    const double target = u * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.end()) {
        // Only reachable when target == total; take the last non-empty bin.
        std::size_t idx = cdf.size() - 1;
        while (idx > 0 && cdf[idx - 1] == cdf[idx]) {
            --idx;
        }
        return idx;
    }
    return static_cast<std::size_t>(it - cdf.begin());
}

MeasurementCounts sample(const QuantumState &state, std::uint64_t shots,
                         std::uint64_t seed) {
    if (shots < 1) {
        throw ValidationError("shots must be >= 1");
    }
    const auto cdf = cumulative_probabilities(state);
    std::vector<std::uint64_t> tally(state.dimension(), 0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        auto rng = shot_rng(seed, shot, RngStream::Measurement);
        ++tally[draw_outcome(cdf, uniform(rng))];
    }
    MeasurementCounts counts;
    counts.n_qubits = state.n_qubits();
    counts.shots = shots;
    for (std::size_t i = 0; i < tally.size(); ++i) {
        if (tally[i] != 0) {
            counts.histogram.emplace(bitstring(i, state.n_qubits()), tally[i]);
        }
    }
    return counts;
}

} // namespace spindigit
