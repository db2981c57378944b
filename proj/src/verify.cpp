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

#include "spindigit/verify.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spindigit/analysis.hpp"
#include "spindigit/config.hpp"
#include "spindigit/error.hpp"
#include "spindigit/models.hpp"
#include "spindigit/noise.hpp"
#include "spindigit/oracle.hpp"

namespace spindigit {

namespace {

constexpr double kPi = u3::kPi;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void fail(const std::string &why) {
        if (passed) {
            detail.str("");
        }
        passed = false;
        detail << why << "; ";
    }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

QuantumState random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<Complex> amp(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amp) {
        a = {gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amp) {
        a /= std::sqrt(norm);
    }
    return QuantumState::from_amplitudes(std::move(amp));
}

QuantumState prepared(const InitialStateSpec &initial, const ModelSpec &model) {
    const auto exp = full_experiment(initial, model, 0.0, 1);
    return run(exp.circuit, QuantumState(exp.circuit.n_qubits()));
}

// 1: compiled Trotter circuits agree with the literal product of exponentials.
void oracle_equivalence(const VerifyOptions &opt, Outcome &out) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> tau_dist(0.0, 2.0);
    const auto draw_tau = [&] {
        double t = 0.0;
        while (t == 0.0) {
            t = 2.0 - tau_dist(rng); // (0, 2]
        }
        return t;
    };
    double worst = 1.0;
    std::size_t cases = 0;
    const auto check = [&](const Circuit &compiled, const PauliSum &terms,
                           double t, std::size_t n, const std::string &label) {
        const Circuit c = opt.mutate ? opt.mutate(compiled) : compiled;
        const auto psi0 = random_state(c.n_qubits(), rng);
        const double f =
            fidelity(run(c, psi0), trotter_reference(terms, psi0, t, n));
        worst = std::min(worst, f);
        ++cases;
        if (!(f >= 1.0 - 1e-10)) {
            out.fail(label + " tau=" + fmt(t) + " N=" + std::to_string(n) +
                     " fidelity=" + fmt(f));
        }
    };
    for (std::size_t l = 1; l <= 4; ++l) {
        for (const auto &spec : {CentralSpinSpec::compact(l), CentralSpinSpec::hub(l)}) {
            const auto terms = central_spin_terms(spec);
            for (std::size_t n = 1; n <= 3; ++n) {
                for (int k = 0; k < 5; ++k) {
                    const double t = draw_tau();
                    check(trotter_central_spin(spec, t, n), terms, t, n,
                          "central-spin L=" + std::to_string(l));
                }
            }
        }
    }
    for (const auto &topo : {Topology::chain(4), Topology::ladder(2)}) {
        for (double alpha : {1.0, 2.0}) {
            const IsingSpec spec{topo, 1.0, alpha};
            const auto terms = ising_terms(spec);
            for (std::size_t n = 1; n <= 2; ++n) {
                for (int k = 0; k < 5; ++k) {
                    const double t = draw_tau();
                    check(trotter_ising(spec, t, n), terms, t, n,
                          describe(ModelSpec{spec}));
                }
            }
        }
    }
    if (out.passed) {
        out.detail << cases << " cases, min fidelity " << fmt(worst);
    }
}

// 2: dark states never populate the central spin under exact evolution.
void dark_state_blockade(const VerifyOptions &, Outcome &out) {
    const std::pair<InitialStateSpec, ModelSpec> cases[] = {
        {TwoPES{kPi}, CentralSpinSpec::hub(2)},
        {ThreePES{0.0}, CentralSpinSpec::hub(3)},
    };
    for (const auto &[initial, model] : cases) {
        const auto &spec = std::get<CentralSpinSpec>(model);
        const SpectralPropagator prop(
            build_hamiltonian(central_spin_terms(spec), spec.n_qubits));
        const auto psi0 = prepared(initial, model);
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double tau = 2.0 * i / 200.0;
            worst = std::max(worst, excited_population(prop.evolve(psi0, tau),
                                                       spec.central));
        }
        if (!(worst <= 1e-12)) {
            out.fail(describe(initial) + " max n_c=" + fmt(worst));
        } else {
            out.detail << describe(initial) << " max n_c=" << fmt(worst) << "; ";
        }
    }
}

// 3: the phi = pi Trotter artifact shrinks as N grows.
void trotter_artifact(const VerifyOptions &, Outcome &out) {
    const ModelSpec model = CentralSpinSpec::hub(2);
    std::vector<double> nc;
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto exp = full_experiment(TwoPES{kPi}, model, 1.0, n);
        nc.push_back(excited_population(
            run(exp.circuit, QuantumState(exp.circuit.n_qubits())),
            exp.observed[0]));
    }
    out.detail << "n_c(tau=1) for N=1,2,3: " << fmt(nc[0]) << ", " << fmt(nc[1])
               << ", " << fmt(nc[2]);
    if (!(nc[0] > nc[1] && nc[1] > nc[2])) {
        out.fail("not strictly decreasing: " + out.detail.str());
    }
}

// 4: first zero of n_c from an excited central spin at pi / (2 sqrt L).
void collective_rabi(const VerifyOptions &, Outcome &out) {
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto spec = CentralSpinSpec::compact(l);
        const SpectralPropagator prop(
            build_hamiltonian(central_spin_terms(spec), spec.n_qubits));
        const auto psi0 = initial_state_vector(CentralExcited{l}, spec);
        const std::size_t index = std::size_t{1} << spec.central;
        // n_c = |a|^2 touches zero without a sign change; a itself crosses.
        const auto amplitude = [&](double tau) {
            return prop.evolve(psi0, tau)[index].real();
        };
        double lo = 0.0;
        double hi = 0.0;
        for (double tau = 0.01;; tau += 0.01) {
            if (amplitude(tau) <= 0.0) {
                hi = tau;
                lo = tau - 0.01;
                break;
            }
            if (tau > 3.0) {
                break;
            }
        }
        if (hi == 0.0) {
            out.fail("no zero found for L=" + std::to_string(l));
            continue;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (amplitude(mid) > 0.0 ? lo : hi) = mid;
        }
        const double root = 0.5 * (lo + hi);
        const double expected = kPi / (2.0 * std::sqrt(static_cast<double>(l)));
        const double err = std::abs(root - expected);
        if (!(err <= 1e-9)) {
            out.fail("L=" + std::to_string(l) + " zero at " + fmt(root) +
                     ", expected " + fmt(expected));
        } else {
            out.detail << "L=" << l << " |dev|=" << fmt(err) << "; ";
        }
    }
}

double distance_to_exact(const InitialStateSpec &initial, const ModelSpec &model,
                         const PauliSum &terms, double t, std::size_t n) {
    const auto exp = full_experiment(initial, model, t, n);
    const auto psi0 = prepared(initial, model);
    const auto compiled = run(exp.circuit, QuantumState(exp.circuit.n_qubits()));
    const auto exact = evolve_exact(build_hamiltonian(terms, model_width(model)),
                                    psi0, t);
    return phase_insensitive_distance(compiled, exact);
}

// 5: first-order convergence, error ratio ~2 per doubling of N.
void trotter_convergence(const VerifyOptions &, Outcome &out) {
    const ModelSpec central = CentralSpinSpec::compact(2);
    const ModelSpec ising = IsingSpec{Topology::chain(4), 1.0, 1.0};
    const std::tuple<std::string, InitialStateSpec, ModelSpec> cases[] = {
        {"central-spin L=2", CentralExcited{2}, central},
        {"ising chain4", Ferromagnetic{}, ising},
    };
    for (const auto &[label, initial, model] : cases) {
        const auto terms = model_terms(model);
        std::vector<double> err;
        for (std::size_t n : {4, 8, 16}) {
            err.push_back(distance_to_exact(initial, model, terms, 0.5, n));
        }
        for (std::size_t k = 0; k + 1 < err.size(); ++k) {
            const double ratio = err[k] / err[k + 1];
            out.detail << label << " ratio " << fmt(ratio) << "; ";
            if (!(ratio >= 1.7 && ratio <= 2.3)) {
                out.fail(label + " ratio " + fmt(ratio) + " outside [1.7, 2.3]");
            }
        }
    }
}

// 6: preparation circuits reproduce the closed-form entangled states.
void state_preparation(const VerifyOptions &, Outcome &out) {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    double worst = 0.0;
    for (double phase : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi, 2.0}) {
        std::vector<Complex> pes2(4, 0.0);
        pes2[0b10] = r2;                            // a=0, b=1
        pes2[0b01] = r2 * std::polar(1.0, phase);   // a=1, b=0
        const auto got2 = run(prepare_2pes(phase, 0, 1), QuantumState(2));
        worst = std::max(worst, phase_insensitive_distance(
                                    got2, QuantumState::from_amplitudes(pes2)));

        std::vector<Complex> pes3(8, 0.0);
        pes3[0b001] = r6;
        pes3[0b010] = -2.0 * r6 * std::polar(1.0, phase);
        pes3[0b100] = r6;
        const auto got3 = run(prepare_3pes(phase, {0, 1, 2}), QuantumState(3));
        worst = std::max(worst, phase_insensitive_distance(
                                    got3, QuantumState::from_amplitudes(pes3)));
        // (1, -2 e^{i chi}, 1) / sqrt6 relative weights.
        const Complex ratio = got3[0b010] / got3[0b001];
        const Complex want = -2.0 * std::polar(1.0, phase);
        if (std::abs(ratio - want) > 1e-12 ||
            std::abs(got3[0b100] / got3[0b001] - 1.0) > 1e-12) {
            out.fail("3PES weights wrong at chi=" + fmt(phase));
        }
    }
    if (!(worst <= 1e-12)) {
        out.fail("max distance " + fmt(worst));
    }
    if (out.passed) {
        out.detail << "max distance " << fmt(worst);
    }
}

// 7: per-qubit CNOT census, bond stage counts and the linear error budget.
void cnot_census(const VerifyOptions &, Outcome &out) {
    const IsingSpec ladder{Topology::ladder(8), 1.0, 1.0};
    const auto c = census(trotter_ising(ladder, 0.7, 1));
    for (std::size_t q = 0; q < 16; ++q) {
        const auto neigh = ladder.topology.neighbor_count(q);
        const auto it = c.cnot_per_qubit.find(q);
        const std::size_t got = it == c.cnot_per_qubit.end() ? 0 : it->second;
        const std::size_t want = neigh == 3 ? 6 : neigh == 2 ? 4 : 0;
        if (want == 0 || got != want) {
            out.fail("qubit " + std::to_string(q) + " has " +
                     std::to_string(neigh) + " neighbours and " +
                     std::to_string(got) + " CNOTs");
        }
    }
    const auto chain_stages = bond_schedule(Topology::chain(8)).size();
    const auto ladder_stages = bond_schedule(Topology::ladder(8)).size();
    if (chain_stages != 2 || ladder_stages != 3) {
        out.fail("bond stages chain8=" + std::to_string(chain_stages) +
                 " ladder16=" + std::to_string(ladder_stages));
    }
    // 2 * 0.05 * 3 in binary floating point is one ulp above the double
    // nearest 0.3; equality is checked to that ulp.
    const double budget = error_budget(0.05, 3, 1, 1).estimate;
    const double ulp = std::nextafter(0.3, 1.0) - 0.3;
    if (!(std::abs(budget - 0.3) <= ulp)) {
        out.fail("error_budget(0.05,3,1,1)=" + fmt(budget));
    }
    if (out.passed) {
        out.detail << "ladder16 CNOTs 6/4 per 3/2-neighbour qubit, stages 2/3, "
                   << "budget " << std::setprecision(17) << budget;
    }
}

double population_at(ExperimentSpec spec, double t) {
    spec.grid = TimeGrid{t, t, 1};
    return assemble_series(spec).values.front();
}

// 8: oracle presets reproduce the qualitative shape of the theory panels.
void theory_curves(const VerifyOptions &opt, Outcome &out) {
    const auto fig8 = preset("fig8").curves();
    const auto fig12 = preset("fig12").curves();

    // fig8 curves are phi = 0, pi/4, pi/2, 3pi/4, pi.
    const double n0 = population_at(fig8[0], 0.6);
    const double n2 = population_at(fig8[2], 0.6);
    const double n4 = population_at(fig8[4], 0.6);
    out.detail << "n_c(0.6) phi=0,pi/2,pi: " << fmt(n0) << ", " << fmt(n2) << ", "
               << fmt(n4) << "; ";
    if (!(n0 > n2 && n2 > n4)) {
        out.fail("phi ordering violated: " + fmt(n0) + ", " + fmt(n2) + ", " +
                 fmt(n4));
    }

    const double h = 1e-4;
    double previous = -1.0;
    out.detail << "|slope(0.1)| L=1..4:";
    for (const auto &spec : fig12) {
        const double slope =
            std::abs(population_at(spec, 0.1 + h) - population_at(spec, 0.1 - h)) /
            (2 * h);
        out.detail << ' ' << fmt(slope);
        if (!(slope > previous)) {
            out.fail("growth rate not increasing in L at " + describe(spec.model));
        }
        previous = slope;
    }
    out.detail << "; ";

    if (opt.golden_dir) {
        std::size_t compared = 0;
        for (const auto *set : {&fig8, &fig12}) {
            for (const auto &spec : *set) {
                const auto path = *opt.golden_dir + "/" + series_file_name(spec);
                std::ifstream in(path);
                if (!in) {
                    out.fail("missing golden file " + path);
                    continue;
                }
                const auto series = assemble_series(spec);
                std::string line;
                std::getline(in, line);
                for (std::size_t i = 0; i < series.size(); ++i) {
                    if (!std::getline(in, line)) {
                        out.fail("golden file too short: " + path);
                        break;
                    }
                    std::istringstream fields(line);
                    double tau = 0.0;
                    double value = 0.0;
                    char comma = 0;
                    fields >> tau >> comma >> value;
                    if (std::abs(tau - series.times[i]) > 1e-12 ||
                        std::abs(value - series.values[i]) > 1e-10) {
                        out.fail("golden mismatch in " + path + " row " +
                                 std::to_string(i + 1));
                        break;
                    }
                }
                ++compared;
            }
        }
        out.detail << compared << " golden curves compared";
    }
}

TimeSeries synthetic(const std::vector<double> &values) {
    TimeSeries s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.times.push_back(0.1 * static_cast<double>(i));
        s.values.push_back(values[i]);
        s.stderrs.push_back(0.0);
        s.seeds.push_back(0);
    }
    return s;
}

// 9: offset subtraction and normalization algebra.
void mitigation_algebra(const VerifyOptions &opt, Outcome &out) {
    // Dyadic values keep every subtraction exact.
    const std::vector<double> signal{0.0, 0.125, 0.375, 0.5, 0.25, 0.0625};
    std::vector<double> shifted;
    for (double v : signal) {
        shifted.push_back(v + 0.1875);
    }
    if (delta_n(synthetic(shifted)).values != signal) {
        out.fail("delta_n did not remove a constant offset exactly");
    }

    const auto v = normalized_v(synthetic({0.0, 0.1, 0.4, 0.2}), Normalizer::Max);
    const std::vector<double> want{0.0, 0.25, 1.0, 0.5};
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (std::abs(v.values[i] - want[i]) > 1e-15) {
            out.fail("V([0,0.1,0.4,0.2]) entry " + std::to_string(i) + " = " +
                     fmt(v.values[i]));
        }
    }

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> base(12);
        for (auto &x : base) {
            x = u(rng);
        }
        // Start at the minimum, as an offset occupation curve does, so
        // neither normalizer is close to zero.
        base[0] = 0.0;
        base[3] = 0.5 + 0.5 * u(rng);
        const double scale = 0.1 + 10.0 * u(rng);
        const double offset = -5.0 + 10.0 * u(rng);
        std::vector<double> moved;
        for (double x : base) {
            moved.push_back(scale * x + offset);
        }
        for (auto norm : {Normalizer::Max, Normalizer::Mean}) {
            const auto a = normalized_v(synthetic(base), norm).values;
            const auto b = normalized_v(synthetic(moved), norm).values;
            for (std::size_t i = 0; i < a.size(); ++i) {
                worst = std::max(worst, std::abs(a[i] - b[i]));
            }
        }
    }
    if (!(worst <= 1e-12)) {
        out.fail("affine invariance deviation " + fmt(worst));
    }
    if (out.passed) {
        out.detail << "offset removal exact, V arithmetic exact, affine "
                   << "deviation " << fmt(worst);
    }
}

// 10: the placeholder device noise produces an offset that grows with N and
// flattens the signal.
void noise_behaviour(const VerifyOptions &opt, Outcome &out) {
    const auto noise = ibmqx4_like_noise();
    const ModelSpec model = CentralSpinSpec::hub(2);
    const std::uint64_t shots = 16384;

    std::vector<double> offsets;
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto exp = full_experiment(TwoPES{kPi}, model, 0.0, n);
        offsets.push_back(occupation_from_counts(
            run_noisy(exp.circuit, noise, shots, opt.seed + n), exp.observed));
    }
    out.detail << "tau=0 offsets N=1,2,3: " << fmt(offsets[0]) << ", "
               << fmt(offsets[1]) << ", " << fmt(offsets[2]) << "; ";
    if (!(offsets[1] > 0.0)) {
        out.fail("no tau=0 offset for N=2");
    }
    if (!(offsets[0] < offsets[1] && offsets[1] < offsets[2])) {
        out.fail("offset not increasing with N");
    }

    ExperimentSpec spec;
    spec.model = model;
    spec.initial = TwoPES{0.0};
    spec.trotter_n = 2;
    spec.grid = TimeGrid{0.0, 2.0, 11};
    spec.seed = opt.seed;
    spec.backend = Backend::Ideal;
    spec.shots = 0;
    const auto ideal = assemble_series(spec);
    spec.backend = Backend::Noisy;
    spec.shots = shots;
    spec.noise = noise;
    const auto noisy = assemble_series(spec);
    const double max_ideal =
        *std::max_element(ideal.values.begin(), ideal.values.end());
    const double max_noisy =
        *std::max_element(noisy.values.begin(), noisy.values.end());
    out.detail << "max n_c noiseless " << fmt(max_ideal) << ", noisy "
               << fmt(max_noisy);
    if (!(max_noisy < max_ideal)) {
        out.fail("noise did not suppress the maximum");
    }
}

// 11: reproducible output and the 16-qubit ladder sweep.
void determinism_capacity(const VerifyOptions &opt, Outcome &out) {
    for (auto backend : {Backend::Ideal, Backend::Noisy}) {
        auto config = preset("fig8");
        config.backend = backend;
        config.shots = 2048;
        config.seed = opt.seed;
        config.grid.points = 5;
        const auto curves = config.curves();
        for (const auto &spec : {curves.front(), curves.back()}) {
            if (to_csv(assemble_series(spec)) != to_csv(assemble_series(spec))) {
                out.fail("non-reproducible CSV for " + series_file_name(spec));
            }
        }
    }

    ExperimentSpec spec;
    spec.model = IsingSpec{Topology::ladder(8), 1.0, 1.0};
    spec.initial = Ferromagnetic{};
    spec.backend = Backend::Ideal;
    spec.trotter_n = 1;
    spec.grid = TimeGrid{0.0, 2.0, 20};
    spec.shots = 8192;
    spec.seed = opt.seed;
    const auto start = std::chrono::steady_clock::now();
    const auto series = assemble_series(spec);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    out.detail << "ladder16 ideal sweep (20 x 8192 shots) " << fmt(elapsed)
               << " s";
    if (series.size() != 20 || !(elapsed < 300.0)) {
        out.fail("ladder16 sweep took " + fmt(elapsed) + " s");
    }
}

struct Criterion {
    const char *name;
    double limit_s;
    void (*check)(const VerifyOptions &, Outcome &);
};

const Criterion kCriteria[kCriterionCount] = {
    {"oracle-equivalence", 10.0, oracle_equivalence},
    {"dark-state-blockade", 1.0, dark_state_blockade},
    {"trotter-artifact-monotonicity", 5.0, trotter_artifact},
    {"collective-rabi-scaling", 5.0, collective_rabi},
    {"first-order-convergence", 10.0, trotter_convergence},
    {"state-preparation", 1.0, state_preparation},
    {"cnot-census", 1.0, cnot_census},
    {"theory-curves", 30.0, theory_curves},
    {"mitigation-algebra", 1.0, mitigation_algebra},
    {"noise-qualitative", 60.0, noise_behaviour},
    {"determinism-capacity", 300.0, determinism_capacity},
};

} // namespace

CriterionResult run_criterion(int id, const VerifyOptions &options) {
    if (id < 1 || id > kCriterionCount) {
        throw ValidationError("no criterion " + std::to_string(id));
    }
    const auto &c = kCriteria[id - 1];
    CriterionResult result{id, c.name, false, 0.0, c.limit_s, {}};
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.check(options, outcome);
    } catch (const std::exception &e) {
        outcome.fail(std::string("exception: ") + e.what());
    }
    result.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    result.passed = outcome.passed;
    result.detail = outcome.detail.str();
    if (result.runtime_s >= c.limit_s) {
        result.passed = false;
        result.detail += " runtime limit exceeded";
    }
    return result;
}

std::vector<CriterionResult> run_verification(const VerifyOptions &options) {
    std::vector<CriterionResult> results;
    for (int id = 1; id <= kCriterionCount; ++id) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), id) ==
                options.only.end()) {
            continue;
        }
        results.push_back(run_criterion(id, options));
    }
    return results;
}

std::string to_json_line(const CriterionResult &r) {
    nlohmann::ordered_json j;
    j["criterion"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.passed;
    j["runtime_s"] = r.runtime_s;
    j["limit_s"] = r.limit_s;
    j["detail"] = r.detail;
    return j.dump();
}

Circuit flip_zz_cnots(const Circuit &circuit) {
    Circuit out(circuit.n_qubits());
    for (Gate g : circuit.flattened()) {
        if (g.kind == GateKind::CNOT &&
            g.tag.find("/zz:") != std::string::npos) {
            std::swap(g.qubits[0], g.qubits[1]);
        }
        out.append(std::move(g));
    }
    return out;
}

} // namespace spindigit
