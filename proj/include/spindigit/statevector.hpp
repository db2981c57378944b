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
 * Dense state-vector engine. Qubit 0 is the least-significant bit of the
 * basis-state index; bitstrings are rendered with qubit 0 rightmost.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace spindigit {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

/// Angles of the OpenQASM 2.0 U3 gate, in radians.
struct U3Params {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;

    friend bool operator==(const U3Params &, const U3Params &) = default;
};

// Named U3 parameterizations used by the compilers.
namespace u3 {
inline constexpr double kPi = std::numbers::pi;
inline constexpr U3Params pauli_x{kPi, 0.0, kPi};
inline constexpr U3Params pauli_y{kPi, kPi / 2, kPi / 2};
inline constexpr U3Params pauli_z{0.0, 0.0, kPi};
inline constexpr U3Params hadamard{kPi / 2, 0.0, kPi};
/// Rx(-pi/2): maps the sigma_y eigenbasis onto the sigma_z eigenbasis.
inline constexpr U3Params y_basis{-kPi / 2, -kPi / 2, kPi / 2};
/// Rx(pi/2), the inverse of y_basis.
inline constexpr U3Params y_basis_inverse{kPi / 2, -kPi / 2, kPi / 2};
/// diag(1, e^{i phi})
constexpr U3Params phase(double phi) { return {0.0, 0.0, phi}; }
/// exp(-i theta X / 2)
constexpr U3Params rx(double theta) { return {theta, -kPi / 2, kPi / 2}; }
/// exp(-i theta Y / 2)
constexpr U3Params ry(double theta) { return {theta, 0.0, 0.0}; }
} // namespace u3

/**
 * U3(theta, phi, lambda) =
 *   [[cos(theta/2),           -e^{i lambda} sin(theta/2)],
 *    [e^{i phi} sin(theta/2), e^{i(phi+lambda)} cos(theta/2)]]
 */
[[nodiscard]] Matrix2 u3_matrix(const U3Params &params);

/// Largest qubit count a state may have. Defaults to 24; the environment
/// variable SPINDIGIT_MAX_QUBITS overrides it.
[[nodiscard]] std::size_t max_qubits();

enum class Pauli : std::uint8_t { I, X, Y, Z };

class QuantumState {
  public:
    /// All-zero state |0...0>. Throws CapacityError outside [1, max_qubits()].
    explicit QuantumState(std::size_t n_qubits);

    /// Takes ownership of an amplitude vector whose length is 2^n, n >= 1.
    /// No normalization is applied.
    static QuantumState from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept {
        return amplitudes_;
    }
    [[nodiscard]] Complex operator[](std::size_t index) const {
        return amplitudes_[index];
    }

    [[nodiscard]] double norm_squared() const noexcept;

  private:
    QuantumState() = default;

    std::size_t n_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

[[nodiscard]] QuantumState new_zero_state(std::size_t n_qubits);

/// Computational basis state |index>.
[[nodiscard]] QuantumState basis_state(std::size_t n_qubits, std::size_t index);

void apply_matrix(QuantumState &state, std::size_t qubit, const Matrix2 &m);
void apply_u3(QuantumState &state, std::size_t qubit, const U3Params &params);
void apply_cnot(QuantumState &state, std::size_t control, std::size_t target);
void apply_pauli(QuantumState &state, std::size_t qubit, Pauli pauli);

/// Probability that `qubit` is found in |1>.
[[nodiscard]] double excited_population(const QuantumState &state,
                                        std::size_t qubit);

/// <a|b>
[[nodiscard]] Complex inner_product(const QuantumState &a,
                                    const QuantumState &b);

/// |<a|b>|^2
[[nodiscard]] double fidelity(const QuantumState &a, const QuantumState &b);

/// min over global phase of ||a - e^{i t} b||, i.e. sqrt(2 - 2|<a|b>|) for
/// normalized inputs.
[[nodiscard]] double phase_insensitive_distance(const QuantumState &a,
                                                const QuantumState &b);

struct MeasurementCounts {
    std::size_t n_qubits = 0;
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> histogram;
};

/// Basis index rendered as n characters, qubit 0 rightmost.
[[nodiscard]] std::string bitstring(std::size_t index, std::size_t n_qubits);

// Each shot draws from its own generator derived from (seed, shot, stream),
// so serial and parallel sampling give identical histograms.
enum class RngStream : std::uint32_t { Measurement = 0, Noise = 1 };

[[nodiscard]] std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t shot,
                                       RngStream stream);

[[nodiscard]] std::vector<double>
cumulative_probabilities(const QuantumState &state);

/// Smallest index whose cumulative probability exceeds u.
[[nodiscard]] std::size_t draw_outcome(std::span<const double> cdf, double u);

/// Multinomial sampling of computational-basis outcomes. Requires shots >= 1.
[[nodiscard]] MeasurementCounts sample(const QuantumState &state,
                                       std::uint64_t shots, std::uint64_t seed);

} // namespace spindigit
