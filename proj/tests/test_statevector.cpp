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

#include <array>
#include <cmath>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "spindigit/error.hpp"
#include "spindigit/statevector.hpp"
#include "support/reference.hpp"

namespace spindigit {
namespace {

constexpr double kPi = u3::kPi;

ref::Mat as_mat(const Matrix2 &m) {
    ref::Mat out(2, 2);
    out << m[0], m[1], m[2], m[3];
    return out;
}

TEST(StateVector, ZeroStateAmplitudes) {
    const auto one = new_zero_state(1);
    ASSERT_EQ(one.dimension(), 2U);
    EXPECT_EQ(one[0], Complex(1.0));
    EXPECT_EQ(one[1], Complex(0.0));

    const auto three = new_zero_state(3);
    ASSERT_EQ(three.dimension(), 8U);
    EXPECT_EQ(three[0], Complex(1.0));
    for (std::size_t i = 1; i < 8; ++i) {
        EXPECT_EQ(three[i], Complex(0.0));
    }
}

TEST(StateVector, CapacityLimits) {
    EXPECT_THROW((void)new_zero_state(0), CapacityError);
    EXPECT_THROW((void)new_zero_state(max_qubits() + 1), CapacityError);
}

TEST(StateVector, CapacityCeilingFromEnvironment) {
    ::setenv("SPINDIGIT_MAX_QUBITS", "4", 1);
    EXPECT_EQ(max_qubits(), 4U);
    EXPECT_THROW((void)new_zero_state(5), CapacityError);
    ::unsetenv("SPINDIGIT_MAX_QUBITS");
    EXPECT_EQ(max_qubits(), 24U);
}

TEST(StateVector, U3StandardIdentities) {
    auto s = new_zero_state(1);
    apply_u3(s, 0, u3::pauli_x);
    EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-12);

    auto h = new_zero_state(1);
    apply_u3(h, 0, u3::hadamard);
    EXPECT_NEAR(h[0].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(h[1].real(), 1 / std::sqrt(2.0), 1e-12);

    EXPECT_LT(ref::phase_distance(as_mat(u3_matrix(u3::pauli_x)), ref::pauli('X')), 1e-12);
    EXPECT_LT(ref::phase_distance(as_mat(u3_matrix(u3::pauli_y)), ref::pauli('Y')), 1e-12);
    EXPECT_LT(ref::phase_distance(as_mat(u3_matrix(u3::pauli_z)), ref::pauli('Z')), 1e-12);
    const ref::Mat had = (ref::pauli('X') + ref::pauli('Z')) / std::sqrt(2.0);
    EXPECT_LT(ref::phase_distance(as_mat(u3_matrix(u3::hadamard)), had), 1e-12);
}

// U3(-pi/2, -pi/2, pi/2) is the sigma_y -> sigma_z basis change Rx(-pi/2),
// not Pauli-Y itself.
TEST(StateVector, YBasisGateIsRxMinusHalfPi) {
    const ref::Mat g = as_mat(u3_matrix(u3::y_basis));
    const ref::Mat rx = ref::propagator(ref::pauli('X'), -kPi / 4);
    EXPECT_LT((g - rx).cwiseAbs().maxCoeff(), 1e-12);
    // G^dag Z G = -Y, so conjugating a ZZ rotation by G on both qubits gives YY.
    EXPECT_LT((g.adjoint() * ref::pauli('Z') * g + ref::pauli('Y')).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_GT(ref::phase_distance(g, ref::pauli('Y')), 0.5);
    const ref::Mat inv = as_mat(u3_matrix(u3::y_basis_inverse));
    EXPECT_LT((inv * g - ref::Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StateVector, RzFromHadamardAndU3) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
    const ref::Mat had = as_mat(u3_matrix(u3::hadamard));
    for (int k = 0; k < 20; ++k) {
        const double tau = u(rng);
        const ref::Mat seq = had * as_mat(u3_matrix({tau, -kPi / 2, kPi / 2})) * had;
        ref::Mat rz = ref::Mat::Zero(2, 2);
        rz(0, 0) = std::polar(1.0, -tau / 2);
        rz(1, 1) = std::polar(1.0, tau / 2);
        EXPECT_LT(ref::phase_distance(seq, rz), 1e-12) << "tau=" << tau;
    }
}

TEST(StateVector, U3OutOfRange) {
    auto s = new_zero_state(2);
    EXPECT_THROW(apply_u3(s, 2, u3::pauli_x), IndexError);
    EXPECT_THROW((void)excited_population(s, 5), IndexError);
}

TEST(StateVector, CnotTruthTable) {
    auto s = basis_state(2, 0b10);
    apply_cnot(s, 1, 0);
    EXPECT_NEAR(std::abs(s[0b11]), 1.0, 1e-15);

    auto z = new_zero_state(2);
    apply_cnot(z, 1, 0);
    EXPECT_NEAR(std::abs(z[0]), 1.0, 1e-15);

    auto bell = new_zero_state(2);
    apply_u3(bell, 0, u3::hadamard);
    apply_cnot(bell, 0, 1);
    EXPECT_NEAR(bell[0b00].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(bell[0b11].real(), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(bell[0b01]) + std::abs(bell[0b10]), 0.0, 1e-15);

    EXPECT_THROW(apply_cnot(bell, 1, 1), ValidationError);
    EXPECT_THROW(apply_cnot(bell, 0, 2), IndexError);
}

TEST(StateVector, ExcitedPopulation) {
    EXPECT_DOUBLE_EQ(excited_population(basis_state(1, 1), 0), 1.0);
    auto plus = new_zero_state(1);
    apply_u3(plus, 0, u3::hadamard);
    EXPECT_NEAR(excited_population(plus, 0), 0.5, 1e-12);
}

TEST(StateVector, Fidelity) {
    std::mt19937_64 rng(3);
    const auto psi = ref::state(ref::random_vec(3, rng));
    EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(basis_state(1, 0), basis_state(1, 1)), 0.0, 1e-15);
    auto h = new_zero_state(1);
    apply_u3(h, 0, u3::hadamard);
    EXPECT_NEAR(fidelity(basis_state(1, 0), h), 0.5, 1e-12);
    EXPECT_THROW((void)fidelity(new_zero_state(1), new_zero_state(2)),
                 ValidationError);
}

TEST(StateVector, GatesMatchKroneckerReference) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const std::size_t n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        const ref::Vec v = ref::random_vec(n, rng);
        auto s = ref::state(v);
        const std::size_t q = rng() % n;
        const U3Params p{angle(rng), angle(rng), angle(rng)};
        apply_u3(s, q, p);
        const ref::Vec want = ref::embed(n, q, ref::u3(p.theta, p.phi, p.lambda)) * v;
        EXPECT_LT((ref::vec(s) - want).cwiseAbs().maxCoeff(), 1e-12);

        const std::size_t c = rng() % n;
        const std::size_t t = (c + 1 + rng() % (n - 1)) % n;
        auto s2 = ref::state(v);
        apply_cnot(s2, c, t);
        EXPECT_LT((ref::vec(s2) - ref::cnot(n, c, t) * v).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(StateVector, NormPreservedOverRandomCircuits) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (std::size_t n = 1; n <= 10; n += 3) {
        auto s = new_zero_state(n);
        for (int g = 0; g < 200; ++g) {
            if (n > 1 && rng() % 3 == 0) {
                const std::size_t c = rng() % n;
                apply_cnot(s, c, (c + 1 + rng() % (n - 1)) % n);
            } else {
                apply_u3(s, rng() % n, {angle(rng), angle(rng), angle(rng)});
            }
        }
        EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-9);
    }
}

TEST(StateVector, Linearity) {
    std::mt19937_64 rng(9);
    const std::size_t n = 3;
    const ref::Vec a = ref::random_vec(n, rng);
    const ref::Vec b = ref::random_vec(n, rng);
    const Complex alpha{0.3, -0.4};
    const Complex beta{0.7, 0.2};
    const U3Params p{0.7, -1.1, 2.3};
    auto sa = ref::state(a);
    auto sb = ref::state(b);
    auto sab = ref::state(alpha * a + beta * b);
    for (auto *s : {&sa, &sb, &sab}) {
        apply_u3(*s, 1, p);
        apply_cnot(*s, 1, 2);
    }
    const ref::Vec combined = alpha * ref::vec(sa) + beta * ref::vec(sb);
    EXPECT_LT((ref::vec(sab) - combined).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StateVector, SampleDeterministicStates) {
    const auto counts = sample(basis_state(1, 1), 100, 42);
    ASSERT_EQ(counts.histogram.size(), 1U);
    EXPECT_EQ(counts.histogram.at("1"), 100U);
    EXPECT_THROW((void)sample(basis_state(1, 1), 0, 1), ValidationError);
}

TEST(StateVector, SampleBellStatistics) {
    auto bell = new_zero_state(2);
    apply_u3(bell, 0, u3::hadamard);
    apply_cnot(bell, 0, 1);
    const auto counts = sample(bell, 8192, 1234);
    std::uint64_t total = 0;
    for (const auto &[bits, n] : counts.histogram) {
        EXPECT_TRUE(bits == "00" || bits == "11") << bits;
        total += n;
    }
    EXPECT_EQ(total, 8192U);
    const double sigma = std::sqrt(8192 * 0.25);
    EXPECT_LT(std::abs(static_cast<double>(counts.histogram.at("00")) - 4096.0),
              5 * sigma);

    const auto again = sample(bell, 8192, 1234);
    EXPECT_EQ(counts.histogram, again.histogram);
}

TEST(StateVector, SampleFrequenciesConverge) {
    std::mt19937_64 rng(21);
    const auto psi = ref::state(ref::random_vec(3, rng));
    const std::uint64_t shots = 20000;
    const auto counts = sample(psi, shots, 99);
    std::uint64_t total = 0;
    std::array<std::uint64_t, 3> ones{};
    for (const auto &[bits, n] : counts.histogram) {
        ASSERT_EQ(bits.size(), 3U);
        total += n;
        for (std::size_t q = 0; q < 3; ++q) {
            ones[q] += bits[2 - q] == '1' ? n : 0;
        }
    }
    EXPECT_EQ(total, shots);
    for (std::size_t q = 0; q < 3; ++q) {
        EXPECT_LT(std::abs(static_cast<double>(ones[q]) / shots -
                           excited_population(psi, q)),
                  4 / std::sqrt(static_cast<double>(shots)));
    }
}

TEST(StateVector, BitstringQubitZeroRightmost) {
    EXPECT_EQ(bitstring(0b001, 3), "001");
    EXPECT_EQ(bitstring(0b100, 3), "100");
}

} // namespace
} // namespace spindigit
