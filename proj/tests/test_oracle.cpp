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

#include <cmath>
#include <random>

#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include "spindigit/circuit.hpp"
#include "spindigit/error.hpp"
#include "spindigit/models.hpp"
#include "spindigit/oracle.hpp"
#include "support/reference.hpp"

namespace spindigit {
namespace {

constexpr double kPi = u3::kPi;

PauliTerm term(double c, std::map<std::size_t, Pauli> f) { return {c, std::move(f)}; }

std::vector<double> sorted_eigenvalues(const PauliSum &terms, std::size_t n) {
    const SpectralPropagator p(build_hamiltonian(terms, n));
    return {p.eigenvalues().begin(), p.eigenvalues().end()};
}

PauliSum random_terms(std::size_t n, std::size_t count, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PauliSum terms;
    for (std::size_t k = 0; k < count; ++k) {
        PauliTerm t{u(rng), {}};
        for (std::size_t q = 0; q < n; ++q) {
            const auto p = static_cast<Pauli>(rng() % 4);
            if (p != Pauli::I) {
                t.factors[q] = p;
            }
        }
        if (t.factors.empty()) {
            t.factors[0] = Pauli::Z;
        }
        terms.push_back(std::move(t));
    }
    return terms;
}

ref::Mat reference_matrix(const PauliSum &terms, std::size_t n) {
    const auto dim = Eigen::Index{1} << n;
    ref::Mat h = ref::Mat::Zero(dim, dim);
    for (const auto &t : terms) {
        std::map<std::size_t, char> f;
        for (const auto &[q, p] : t.factors) {
            f[q] = "IXYZ"[static_cast<int>(p)];
        }
        h += t.coefficient * ref::pauli_string(n, f);
    }
    return h;
}

TEST(Oracle, BuildHamiltonianExamples) {
    const auto z = build_hamiltonian({term(1.0, {{0, Pauli::Z}})}, 1);
    EXPECT_EQ(z(0, 0), Complex(1.0));
    EXPECT_EQ(z(1, 1), Complex(-1.0));
    EXPECT_EQ(z(0, 1), Complex(0.0));

    const auto central = sorted_eigenvalues(central_spin_terms(CentralSpinSpec::compact(1)), 2);
    const std::vector<double> want{-1, 0, 0, 1};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(central[k], want[k], 1e-12);
    }

    const IsingSpec pair{Topology::chain(2), 1.5, 0.0};
    const auto ising = sorted_eigenvalues(ising_terms(pair), 2);
    const std::vector<double> want_ising{-1.5, -1.5, 1.5, 1.5};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(ising[k], want_ising[k], 1e-12);
    }
}

TEST(Oracle, BuildHamiltonianMatchesKronecker) {
    std::mt19937_64 rng(21);
    for (std::size_t n : {1, 3, 5}) {
        const auto terms = random_terms(n, 8, rng);
        const auto h = build_hamiltonian(terms, n);
        EXPECT_LT((h - reference_matrix(terms, n)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Oracle, CapacityCeiling) {
    const PauliSum terms{term(1.0, {{0, Pauli::Z}})};
    EXPECT_THROW((void)build_hamiltonian(terms, kDenseDefaultCeiling + 1), CapacityError);
    EXPECT_THROW((void)build_hamiltonian(terms, kDenseHardCeiling + 1, {true}), CapacityError);
    EXPECT_THROW((void)build_hamiltonian({term(1.0, {{3, Pauli::X}})}, 2), IndexError);
}

TEST(Oracle, EvolveExactExamples) {
    std::mt19937_64 rng(22);
    const auto terms = random_terms(3, 6, rng);
    const auto h = build_hamiltonian(terms, 3);
    const auto psi = ref::state(ref::random_vec(3, rng));
    EXPECT_NEAR(fidelity(evolve_exact(h, psi, 0.0), psi), 1.0, 1e-12);

    QuantumState plus(1);
    apply_u3(plus, 0, u3::hadamard);
    const auto out = evolve_exact(build_hamiltonian({term(1.0, {{0, Pauli::Z}})}, 1), plus,
                                  kPi / 2);
    EXPECT_NEAR(std::abs(out[0] - std::polar(1 / std::sqrt(2.0), -kPi / 2)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out[1] - std::polar(1 / std::sqrt(2.0), kPi / 2)), 0.0, 1e-12);
    EXPECT_NEAR(excited_population(out, 0), 0.5, 1e-12);

    EXPECT_THROW((void)evolve_exact(h, new_zero_state(2), 0.3), ValidationError);
}

TEST(Oracle, EvolveExactMatchesPadeExponential) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> time(-3.0, 3.0);
    for (int k = 0; k < 5; ++k) {
        const auto terms = random_terms(4, 10, rng);
        const double t = time(rng);
        const ref::Vec v = ref::random_vec(4, rng);
        const ref::Vec want = ref::propagator(reference_matrix(terms, 4), t) * v;
        const auto got = evolve_exact(build_hamiltonian(terms, 4), ref::state(v), t);
        EXPECT_LT((ref::vec(got) - want).norm(), 1e-10);
    }
}

TEST(Oracle, EnergyAndNormConserved) {
    std::mt19937_64 rng(24);
    for (int k = 0; k < 5; ++k) {
        const auto terms = random_terms(5, 12, rng);
        const SpectralPropagator prop(build_hamiltonian(terms, 5));
        const auto psi = ref::state(ref::random_vec(5, rng));
        const double e0 = expectation(terms, psi);
        for (double t : {0.3, 1.7, 9.0}) {
            const auto out = prop.evolve(psi, t);
            EXPECT_NEAR(expectation(terms, out), e0, 1e-9);
            EXPECT_NEAR(out.norm_squared(), 1.0, 1e-10);
        }
    }
}

TEST(Oracle, PauliStringAndExponential) {
    std::mt19937_64 rng(25);
    for (int k = 0; k < 10; ++k) {
        auto terms = random_terms(4, 1, rng);
        const auto &t = terms[0];
        const ref::Vec v = ref::random_vec(4, rng);
        PauliTerm unit{1.0, t.factors};
        auto s = ref::state(v);
        apply_pauli_string(s, unit);
        const ref::Mat p = reference_matrix({unit}, 4);
        EXPECT_LT((ref::vec(s) - p * v).norm(), 1e-12);

        auto e = ref::state(v);
        apply_pauli_exponential(e, t, 0.8);
        EXPECT_LT((ref::vec(e) - ref::propagator(t.coefficient * p, 0.8) * v).norm(), 1e-12);
    }
}

TEST(Oracle, LargeSingleExcitationRabi) {
    // With the central spin excited, the amplitude follows cos(sqrt(L) tau).
    const auto spec = CentralSpinSpec::compact(4);
    const SpectralPropagator prop(build_hamiltonian(central_spin_terms(spec), 5));
    const auto psi0 = initial_state_vector(CentralExcited{4}, spec);
    for (double tau : {0.0, 0.2, 0.5, kPi / 4, 1.3}) {
        EXPECT_NEAR(excited_population(prop.evolve(psi0, tau), spec.central),
                    std::pow(std::cos(2 * tau), 2), 1e-12);
    }
}

TEST(Oracle, CollectiveRabiFirstZero) {
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto spec = CentralSpinSpec::compact(l);
        const SpectralPropagator prop(build_hamiltonian(central_spin_terms(spec), l + 1));
        const auto psi0 = initial_state_vector(CentralExcited{l}, spec);
        const auto amplitude = [&](double tau) {
            return prop.evolve(psi0, tau)[std::size_t{1} << spec.central].real();
        };
        double lo = 0.0;
        while (amplitude(lo + 0.05) > 0) {
            lo += 0.05;
        }
        const auto [a, b] = boost::math::tools::bisect(
            amplitude, lo, lo + 0.05, boost::math::tools::eps_tolerance<double>(50));
        EXPECT_NEAR(0.5 * (a + b), kPi / (2 * std::sqrt(static_cast<double>(l))), 1e-9)
            << "L=" << l;
    }
}

TEST(Oracle, DarkStatesStayDark) {
    const auto two = CentralSpinSpec::compact(2);
    const SpectralPropagator p2(build_hamiltonian(central_spin_terms(two), 3));
    const auto psi2 = initial_state_vector(TwoPES{kPi}, two);
    const auto three = CentralSpinSpec::compact(3);
    const SpectralPropagator p3(build_hamiltonian(central_spin_terms(three), 4));
    const auto psi3 = initial_state_vector(ThreePES{0.0}, three);
    for (int k = 0; k <= 40; ++k) {
        const double tau = 0.05 * k;
        EXPECT_LE(excited_population(p2.evolve(psi2, tau), two.central), 1e-12);
        EXPECT_LE(excited_population(p3.evolve(psi3, tau), three.central), 1e-12);
    }
}

TEST(Oracle, InitialStateVectors) {
    const auto spec = CentralSpinSpec::hub(3);
    const auto psi = initial_state_vector(ThreePES{0.4}, spec);
    EXPECT_NEAR(std::abs(psi[1U << spec.bath[0]]), 1 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(std::abs(psi[1U << spec.bath[1]]), 1 / std::sqrt(6.0), 1e-15);
    EXPECT_NEAR(std::abs(psi[1U << spec.bath[2]] / psi[1U << spec.bath[0]] +
                         2.0 * std::polar(1.0, 0.4)),
                0.0, 1e-12);
    const auto ferro = initial_state_vector(Ferromagnetic{}, IsingSpec{Topology::chain(3), 1, 1});
    EXPECT_EQ(ferro[0], Complex(1.0));
    EXPECT_THROW((void)initial_state_vector(TwoPES{0}, CentralSpinSpec::hub(3)), ValidationError);
}

TEST(Oracle, TrotterReferenceMatchesCompiledCircuits) {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto spec = CentralSpinSpec::hub(l);
        const auto terms = central_spin_terms(spec);
        for (std::size_t n = 1; n <= 3; ++n) {
            const double tau = u(rng);
            const auto psi = ref::state(ref::random_vec(spec.n_qubits, rng));
            EXPECT_GE(fidelity(trotter_reference(terms, psi, tau, n),
                               run(trotter_central_spin(spec, tau, n), psi)),
                      1 - 1e-10);
        }
    }
    const IsingSpec ising{Topology::ladder(2), 0.8, 1.4};
    const auto psi = ref::state(ref::random_vec(4, rng));
    EXPECT_GE(fidelity(trotter_reference(ising_terms(ising), psi, 0.9, 2),
                       run(trotter_ising(ising, 0.9, 2), psi)),
              1 - 1e-10);
}

TEST(Oracle, TrotterReferenceShortTime) {
    std::mt19937_64 rng(27);
    const auto spec = CentralSpinSpec::compact(2);
    const auto psi = ref::state(ref::random_vec(3, rng));
    double previous = 1.0;
    for (double tau : {1e-1, 1e-2, 1e-3}) {
        const double d = 1 - fidelity(trotter_reference(central_spin_terms(spec), psi, tau, 1), psi);
        EXPECT_LT(d, previous);
        EXPECT_LT(d, 4 * tau);
        previous = d;
    }
}

TEST(Oracle, DarkStateArtifactShrinksInReference) {
    const auto spec = CentralSpinSpec::compact(2);
    const auto psi = initial_state_vector(TwoPES{kPi}, spec);
    const auto terms = central_spin_terms(spec);
    const double n1 = excited_population(trotter_reference(terms, psi, 1.0, 1), spec.central);
    const double n3 = excited_population(trotter_reference(terms, psi, 1.0, 3), spec.central);
    EXPECT_GT(n1, 1e-3);
    EXPECT_LT(n3, n1);
}

TEST(Oracle, FirstOrderTrotterConvergence) {
    const auto spec = CentralSpinSpec::compact(2);
    const auto terms = central_spin_terms(spec);
    const auto psi = initial_state_vector(CentralExcited{2}, spec);
    const auto exact = evolve_exact(build_hamiltonian(terms, 3), psi, 0.5);
    std::vector<double> err;
    for (std::size_t n : {4, 8, 16}) {
        err.push_back(phase_insensitive_distance(run(trotter_central_spin(spec, 0.5, n), psi), exact));
    }
    for (std::size_t k = 0; k + 1 < err.size(); ++k) {
        EXPECT_GE(err[k] / err[k + 1], 1.7);
        EXPECT_LE(err[k] / err[k + 1], 2.3);
    }
}

TEST(Oracle, MatrixFreeMatchesExact) {
    std::mt19937_64 rng(28);
    std::uniform_real_distribution<double> time(0.1, 2.0);
    for (std::size_t n : {2, 4, 6, 8, 10}) {
        const auto terms = random_terms(n, 2 * n, rng);
        const auto psi = ref::state(ref::random_vec(n, rng));
        const double t = time(rng);
        const auto mf = evolve_matrix_free_adaptive(terms, psi, t);
        const auto exact = evolve_exact(build_hamiltonian(terms, n), psi, t);
        EXPECT_LT(phase_insensitive_distance(mf.state, exact), 1e-8) << "n=" << n;
        EXPECT_LT(mf.error_estimate, 1e-8);
        EXPECT_NEAR(mf.state.norm_squared(), 1.0, 1e-10);
    }
    const IsingSpec chain{Topology::chain(8), 1.0, 2.0};
    const auto psi = initial_state_vector(Ferromagnetic{}, chain);
    const auto mf = evolve_matrix_free_adaptive(ising_terms(chain), psi, 1.5);
    const auto exact = evolve_exact(build_hamiltonian(ising_terms(chain), 8), psi, 1.5);
    EXPECT_LT(phase_insensitive_distance(mf.state, exact), 1e-8);
}

TEST(Oracle, MatrixFreeIdentityAtZeroTime) {
    std::mt19937_64 rng(29);
    const auto terms = random_terms(3, 5, rng);
    const auto psi = ref::state(ref::random_vec(3, rng));
    const auto out = evolve_matrix_free(terms, psi, 0.0, 4);
    EXPECT_NEAR(fidelity(out.state, psi), 1.0, 1e-15);
    EXPECT_EQ(out.error_estimate, 0.0);
}

TEST(Oracle, MatrixFreeEstimatesShrinkWithSubsteps) {
    std::mt19937_64 rng(30);
    for (int instance = 0; instance < 5; ++instance) {
        const auto terms = random_terms(5, 8, rng);
        const auto psi = ref::state(ref::random_vec(5, rng));
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t s : {2, 4, 8, 16, 32}) {
            const double e = evolve_matrix_free(terms, psi, 1.5, s, 1.0).error_estimate;
            EXPECT_LT(e, previous) << "instance " << instance << " substeps " << s;
            previous = e;
        }
    }
}

TEST(Oracle, MatrixFreeToleranceError) {
    std::mt19937_64 rng(31);
    const auto terms = random_terms(4, 8, rng);
    const auto psi = ref::state(ref::random_vec(4, rng));
    try {
        (void)evolve_matrix_free(terms, psi, 5.0, 1, 1e-12);
        FAIL() << "expected ToleranceError";
    } catch (const ToleranceError &e) {
        EXPECT_GT(e.estimate(), 1e-12);
    }
}

TEST(Oracle, RotatingFrameEquivalence) {
    std::mt19937_64 rng(32);
    for (std::size_t l = 1; l <= 3; ++l) {
        const auto spec = CentralSpinSpec::compact(l);
        auto lab = central_spin_terms(spec);
        const auto energy = excitation_energy_terms(spec, 2.7);
        lab.insert(lab.end(), energy.begin(), energy.end());
        const auto h_lab = build_hamiltonian(lab, l + 1);
        const auto h_rot = build_hamiltonian(central_spin_terms(spec), l + 1);
        const auto psi = ref::state(ref::random_vec(l + 1, rng));
        for (double tau : {0.4, 1.1, 2.0}) {
            const auto a = evolve_exact(h_lab, psi, tau);
            const auto b = evolve_exact(h_rot, psi, tau);
            for (std::size_t q = 0; q <= l; ++q) {
                EXPECT_NEAR(excited_population(a, q), excited_population(b, q), 1e-10);
            }
        }
    }
}

TEST(Oracle, TermOrderingFollowsCompiler) {
    const auto spec = CentralSpinSpec::hub(2);
    const auto terms = central_spin_terms(spec);
    ASSERT_EQ(terms.size(), 4U);
    EXPECT_EQ(terms[0].factors.at(spec.central), Pauli::Y);
    EXPECT_EQ(terms[1].factors.at(spec.central), Pauli::X);
    EXPECT_EQ(terms[0].factors.at(spec.bath[0]), Pauli::Y);
    EXPECT_EQ(terms[2].factors.at(spec.bath[1]), Pauli::Y);
    EXPECT_DOUBLE_EQ(terms[0].coefficient, 0.5);

    const IsingSpec chain{Topology::chain(3), 2.0, 0.5};
    const auto ising = ising_terms(chain);
    ASSERT_EQ(ising.size(), 5U);
    EXPECT_DOUBLE_EQ(ising[0].coefficient, -0.5);
    EXPECT_DOUBLE_EQ(ising[4].coefficient, -2.0);
}

} // namespace
} // namespace spindigit
