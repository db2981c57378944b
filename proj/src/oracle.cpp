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

#include "spindigit/oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "spindigit/error.hpp"

namespace spindigit {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// P|x> = i^{n_y} (-1)^{popcount(x & phase_mask)} |x ^ flip_mask>
struct PauliMasks {
    std::uint64_t flip = 0;
    std::uint64_t phase = 0;
    Complex global{1.0, 0.0};
};

PauliMasks masks_of(const PauliTerm &term, std::size_t n_qubits) {
    PauliMasks m;
    static constexpr Complex kI{0.0, 1.0};
    for (const auto &[q, p] : term.factors) {
        if (q >= n_qubits) {
            throw IndexError("Pauli factor on qubit " + std::to_string(q) +
                             " outside a " + std::to_string(n_qubits) +
                             "-qubit register");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (p) {
        case Pauli::I:
            break;
        case Pauli::X:
            m.flip |= bit;
            break;
        case Pauli::Y:
            m.flip |= bit;
            m.phase |= bit;
            m.global *= kI;
            break;
        case Pauli::Z:
            m.phase |= bit;
            break;
        }
    }
    return m;
}

double parity_sign(std::uint64_t x) {
    return (std::popcount(x) & 1) ? -1.0 : 1.0;
}

void require_dimension(const QuantumState &state, std::size_t n_qubits) {
    if (state.n_qubits() != n_qubits) {
        throw ValidationError("state has " + std::to_string(state.n_qubits()) +
                              " qubits, operator acts on " +
                              std::to_string(n_qubits));
    }
}

double distance(const QuantumState &a, const QuantumState &b) {
    double sum = 0.0;
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::norm(x[i] - y[i]);
    }
    return std::sqrt(sum);
}

// Symmetric second-order step: forward half-steps then backward half-steps.
void strang_step(QuantumState &state, const PauliSum &terms, double dt) {
    for (const auto &term : terms) {
        apply_pauli_exponential(state, term, dt / 2);
    }
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        apply_pauli_exponential(state, *it, dt / 2);
    }
}

void suzuki4_step(QuantumState &state, const PauliSum &terms, double dt) {
    static const double p = 1.0 / (4.0 - std::cbrt(4.0));
    strang_step(state, terms, p * dt);
    strang_step(state, terms, p * dt);
    strang_step(state, terms, (1.0 - 4.0 * p) * dt);
    strang_step(state, terms, p * dt);
    strang_step(state, terms, p * dt);
}

QuantumState integrate(const PauliSum &terms, const QuantumState &psi0,
                       double time, std::size_t substeps) {
    QuantumState state = psi0;
    const double dt = time / static_cast<double>(substeps);
    for (std::size_t s = 0; s < substeps; ++s) {
        suzuki4_step(state, terms, dt);
    }
    return state;
}

// Richardson step for a fourth-order method: (16 fine - coarse) / 15,
// renormalized.
QuantumState extrapolate(const QuantumState &fine, const QuantumState &coarse) {
    std::vector<Complex> out(fine.dimension());
    const auto x = fine.amplitudes();
    const auto y = coarse.amplitudes();
    double norm = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (16.0 * x[i] - y[i]) / 15.0;
        norm += std::norm(out[i]);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &a : out) {
        a *= scale;
    }
    return QuantumState::from_amplitudes(std::move(out));
}

PauliTerm term(double coefficient,
               std::initializer_list<std::pair<const std::size_t, Pauli>> f) {
    return PauliTerm{coefficient, std::map<std::size_t, Pauli>(f)};
}

} // namespace

HamiltonianMatrix build_hamiltonian(const PauliSum &terms, std::size_t n_qubits,
                                    OracleLimits limits) {
    if (n_qubits < 1 || n_qubits > limits.dense_ceiling()) {
        throw CapacityError("dense Hamiltonian limited to " +
                            std::to_string(limits.dense_ceiling()) +
                            " qubits, requested " + std::to_string(n_qubits));
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    HamiltonianMatrix h = HamiltonianMatrix::Zero(
        static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &t : terms) {
        const auto m = masks_of(t, n_qubits);
        for (std::uint64_t x = 0; x < dim; ++x) {
            h(static_cast<Eigen::Index>(x ^ m.flip), static_cast<Eigen::Index>(x)) +=
                t.coefficient * m.global * parity_sign(x & m.phase);
        }
    }
    return h;
}

SpectralPropagator::SpectralPropagator(const HamiltonianMatrix &hamiltonian) {
    const auto dim = static_cast<std::size_t>(hamiltonian.rows());
    if (hamiltonian.rows() != hamiltonian.cols() || dim < 2 ||
        !std::has_single_bit(dim)) {
        throw ValidationError("Hamiltonian must be square with power-of-two "
                              "dimension >= 2");
    }
    n_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigensolver did not converge");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

QuantumState SpectralPropagator::evolve(const QuantumState &psi0,
                                        double time) const {
    require_dimension(psi0, n_qubits_);
    const auto in = psi0.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> psi(
        in.data(), static_cast<Eigen::Index>(in.size()));
    Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs[k] *= std::polar(1.0, -eigenvalues_[k] * time);
    }
    const Eigen::VectorXcd out = eigenvectors_ * coeffs;
    return QuantumState::from_amplitudes(
        std::vector<Complex>(out.data(), out.data() + out.size()));
}

QuantumState evolve_exact(const HamiltonianMatrix &hamiltonian,
                          const QuantumState &psi0, double time) {
    return SpectralPropagator(hamiltonian).evolve(psi0, time);
}

void apply_pauli_string(QuantumState &state, const PauliTerm &term) {
    const auto m = masks_of(term, state.n_qubits());
    auto amp = state.amplitudes();
    if (m.flip == 0) {
        for (std::uint64_t x = 0; x < amp.size(); ++x) {
            amp[x] *= m.global * parity_sign(x & m.phase);
        }
        return;
    }
    for (std::uint64_t x = 0; x < amp.size(); ++x) {
        const std::uint64_t y = x ^ m.flip;
        if (y < x) {
            continue;
        }
        const Complex ax = amp[x];
        const Complex ay = amp[y];
        amp[y] = m.global * parity_sign(x & m.phase) * ax;
        amp[x] = m.global * parity_sign(y & m.phase) * ay;
    }
}

void apply_pauli_exponential(QuantumState &state, const PauliTerm &term,
                             double time) {
    const double angle = term.coefficient * time;
    const auto m = masks_of(term, state.n_qubits());
    auto amp = state.amplitudes();
    const double c = std::cos(angle);
    const Complex mis{0.0, -std::sin(angle)};
    if (m.flip == 0) {
        // Diagonal string: exp(-i angle s) with s = +-1 (global may be +-1
        // only, as Y always flips).
        const Complex plus = std::polar(1.0, -angle);
        const Complex minus = std::conj(plus);
        const double g = m.global.real();
        for (std::uint64_t x = 0; x < amp.size(); ++x) {
            amp[x] *= (g * parity_sign(x & m.phase) > 0) ? plus : minus;
        }
        return;
    }
    for (std::uint64_t x = 0; x < amp.size(); ++x) {
        const std::uint64_t y = x ^ m.flip;
        if (y < x) {
            continue;
        }
        const Complex ax = amp[x];
        const Complex ay = amp[y];
        // (P psi)[y] = phase(x) psi[x], (P psi)[x] = phase(y) psi[y]
        amp[y] = c * ay + mis * m.global * parity_sign(x & m.phase) * ax;
        amp[x] = c * ax + mis * m.global * parity_sign(y & m.phase) * ay;
    }
}

QuantumState trotter_reference(const PauliSum &terms, const QuantumState &psi0,
                               double time, std::size_t steps) {
    if (steps < 1) {
        throw ValidationError("Trotter number must be >= 1");
    }
    QuantumState state = psi0;
    const double dt = time / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        for (const auto &t : terms) {
            apply_pauli_exponential(state, t, dt);
        }
    }
    return state;
}

MatrixFreeResult evolve_matrix_free(const PauliSum &terms,
                                    const QuantumState &psi0, double time,
                                    std::size_t substeps, double tolerance) {
    if (substeps < 1) {
        throw ValidationError("substeps must be >= 1");
    }
    const QuantumState coarse = integrate(terms, psi0, time, substeps);
    QuantumState fine = integrate(terms, psi0, time, 2 * substeps);
    const double estimate = distance(fine, coarse) / 15.0;
    if (!(estimate <= tolerance)) {
        throw ToleranceError("matrix-free evolution with " +
                                 std::to_string(2 * substeps) +
                                 " substeps did not reach the requested "
                                 "tolerance",
                             estimate);
    }
    return MatrixFreeResult{extrapolate(fine, coarse), estimate, 2 * substeps};
}

MatrixFreeResult evolve_matrix_free_adaptive(const PauliSum &terms,
                                             const QuantumState &psi0,
                                             double time, double tolerance,
                                             std::size_t initial_substeps,
                                             std::size_t max_substeps) {
    std::size_t n = std::max<std::size_t>(1, initial_substeps);
    QuantumState coarse = integrate(terms, psi0, time, n);
    double estimate = 0.0;
    while (2 * n <= max_substeps) {
        QuantumState fine = integrate(terms, psi0, time, 2 * n);
        estimate = distance(fine, coarse) / 15.0;
        if (estimate <= tolerance) {
            return MatrixFreeResult{extrapolate(fine, coarse), estimate, 2 * n};
        }
        coarse = std::move(fine);
        n *= 2;
    }
    throw ToleranceError("matrix-free evolution did not converge within " +
                             std::to_string(max_substeps) + " substeps",
                         estimate);
}

double expectation(const PauliSum &terms, const QuantumState &state) {
    double total = 0.0;
    for (const auto &t : terms) {
        QuantumState image = state;
        apply_pauli_string(image, t);
        total += t.coefficient * inner_product(state, image).real();
    }
    return total;
}

PauliSum central_spin_terms(const CentralSpinSpec &spec, double g) {
    spec.validate();
    PauliSum terms;
    for (auto j : spec.bath) {
        terms.push_back(term(g / 2, {{spec.central, Pauli::Y}, {j, Pauli::Y}}));
        terms.push_back(term(g / 2, {{spec.central, Pauli::X}, {j, Pauli::X}}));
    }
    return terms;
}

PauliSum excitation_energy_terms(const CentralSpinSpec &spec, double epsilon) {
    spec.validate();
    PauliSum terms;
    std::vector<std::size_t> spins{spec.central};
    spins.insert(spins.end(), spec.bath.begin(), spec.bath.end());
    for (auto q : spins) {
        terms.push_back(term(-epsilon, {{q, Pauli::Z}}));
        terms.push_back(PauliTerm{epsilon / 2, {}});
    }
    return terms;
}

PauliSum ising_terms(const IsingSpec &spec) {
    spec.validate();
    PauliSum terms;
    for (std::size_t q = 0; q < spec.topology.n_spins; ++q) {
        terms.push_back(term(-spec.field, {{q, Pauli::X}}));
    }
    for (const auto &stage : bond_schedule(spec.topology)) {
        for (const auto &[i, j] : stage) {
            terms.push_back(term(-spec.coupling, {{i, Pauli::Z}, {j, Pauli::Z}}));
        }
    }
    return terms;
}

PauliSum model_terms(const ModelSpec &model) {
    return std::visit(
        overloaded{[](const CentralSpinSpec &s) { return central_spin_terms(s); },
                   [](const IsingSpec &s) { return ising_terms(s); }},
        model);
}

QuantumState initial_state_vector(const InitialStateSpec &initial,
                                  const ModelSpec &model) {
    const std::size_t n = model_width(model);
    std::vector<Complex> amp(std::size_t{1} << n, Complex{0.0, 0.0});
    const auto one_hot = [](std::size_t q) { return std::size_t{1} << q; };

    if (std::holds_alternative<IsingSpec>(model)) {
        if (!std::holds_alternative<Ferromagnetic>(initial)) {
            throw ValidationError("the Ising model starts from the "
                                  "ferromagnetic state");
        }
        amp[0] = 1.0;
        return QuantumState::from_amplitudes(std::move(amp));
    }
    const auto &spec = std::get<CentralSpinSpec>(model);
    spec.validate();
    const auto need = [&](std::size_t wanted) {
        if (spec.bath_size() != wanted) {
            throw ValidationError("initial state " + describe(initial) +
                                  " needs L=" + std::to_string(wanted));
        }
    };
    std::visit(
        overloaded{
            [&](const TwoPES &s) {
                need(2);
                const double r = 1.0 / std::sqrt(2.0);
                amp[one_hot(spec.bath[1])] = r;
                amp[one_hot(spec.bath[0])] = r * std::polar(1.0, s.phi);
            },
            [&](const ThreePES &s) {
                need(3);
                const double r = 1.0 / std::sqrt(6.0);
                amp[one_hot(spec.bath[0])] = r;
                amp[one_hot(spec.bath[2])] = -2.0 * r * std::polar(1.0, s.chi);
                amp[one_hot(spec.bath[1])] = r;
            },
            [&](const CentralExcited &s) {
                need(s.bath_size);
                amp[one_hot(spec.central)] = 1.0;
            },
            [&](const Ferromagnetic &) {
                throw ValidationError("ferromagnetic initial state is "
                                      "incompatible with the central-spin "
                                      "model");
            }},
        initial);
    return QuantumState::from_amplitudes(std::move(amp));
}

} // namespace spindigit
