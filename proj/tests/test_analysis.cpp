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

#include <gtest/gtest.h>

#include "spindigit/analysis.hpp"
#include "spindigit/error.hpp"
#include "spindigit/models.hpp"
#include "spindigit/oracle.hpp"

namespace spindigit {
namespace {

constexpr double kPi = u3::kPi;

MeasurementCounts counts(std::size_t n, std::map<std::string, std::uint64_t> h) {
    MeasurementCounts c;
    c.n_qubits = n;
    for (const auto &[k, v] : h) {
        c.shots += v;
    }
    c.histogram = std::move(h);
    return c;
}

TimeSeries series(std::vector<double> values) {
    TimeSeries s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.times.push_back(0.1 * static_cast<double>(i));
        s.stderrs.push_back(0.0);
        s.seeds.push_back(i);
    }
    s.values = std::move(values);
    return s;
}

TEST(Analysis, OccupationFromCounts) {
    EXPECT_DOUBLE_EQ(occupation_from_counts(counts(2, {{"11", 100}}), {0, 1}), 1.0);
    EXPECT_DOUBLE_EQ(occupation_from_counts(counts(2, {{"01", 50}, {"10", 50}}), {0, 1}), 0.5);
    // Qubit 0 is the rightmost character.
    EXPECT_DOUBLE_EQ(occupation_from_counts(counts(3, {{"001", 30}, {"100", 10}}), {0}), 0.75);
    EXPECT_DOUBLE_EQ(occupation_from_counts(counts(3, {{"001", 30}, {"100", 10}}), {2}), 0.25);
    EXPECT_THROW((void)occupation_from_counts(counts(2, {{"11", 1}}), {}), ValidationError);
    EXPECT_THROW((void)occupation_from_counts(counts(2, {{"11", 1}}), {2}), IndexError);
}

TEST(Analysis, FerromagneticStartIsEmpty) {
    const IsingSpec spec{Topology::chain(8), 1.0, 2.0};
    const auto exp = full_experiment(Ferromagnetic{}, spec, 0.0, 1);
    const auto c = sample(run(exp.circuit, new_zero_state(8)), 1000, 3);
    EXPECT_EQ(occupation_from_counts(c, exp.observed), 0.0);
}

TEST(Analysis, DeltaN) {
    const auto flat = delta_n(series({0.3, 0.3, 0.3}));
    for (double v : flat.values) {
        EXPECT_EQ(v, 0.0);
    }
    const auto clean = series({0.0, 0.2, 0.5, 0.1});
    EXPECT_EQ(delta_n(clean).values, clean.values);

    const auto offset = series({0.12, 0.25, 0.41});
    const auto d = delta_n(offset);
    EXPECT_EQ(d.values[0], 0.0);
    EXPECT_DOUBLE_EQ(d.values[2], 0.41 - 0.12);
    EXPECT_EQ(delta_n(d).values, d.values);

    auto shifted = series({0.1, 0.2});
    shifted.times = {0.5, 1.0};
    EXPECT_THROW((void)delta_n(shifted), ValidationError);
    EXPECT_THROW((void)delta_n(TimeSeries{}), ValidationError);
}

TEST(Analysis, DeltaNCombinesErrors) {
    auto s = series({0.1, 0.3});
    s.stderrs = {0.03, 0.04};
    const auto d = delta_n(s);
    EXPECT_DOUBLE_EQ(d.stderrs[1], 0.05);
    EXPECT_EQ(d.stderrs[0], 0.0);
}

TEST(Analysis, DeltaNRemovesFlatBackground) {
    std::mt19937_64 rng(41);
    // Dyadic values keep the offset arithmetic exact.
    std::uniform_int_distribution<int> u(0, 512);
    std::vector<double> signal{0.0};
    for (int k = 0; k < 15; ++k) {
        signal.push_back(u(rng) / 1024.0);
    }
    auto noisy = signal;
    for (auto &v : noisy) {
        v += 0.125;
    }
    EXPECT_EQ(delta_n(series(noisy)).values, signal);
}

TEST(Analysis, NormalizedV) {
    const auto v = normalized_v(series({0, 0.1, 0.4, 0.2}), Normalizer::Max);
    const std::vector<double> want{0, 0.25, 1.0, 0.5};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(v.values[i], want[i], 1e-15);
    }
    EXPECT_EQ(v.values[2], 1.0);
    EXPECT_EQ(v.values[0], 0.0);

    const auto m = normalized_v(series({0, 0.1, 0.4, 0.2}), Normalizer::Mean);
    // Mean of (n - n0) over the grid is 0.7 / 4.
    EXPECT_NEAR(m.values[2], 0.4 / (0.7 / 4), 1e-12);

    EXPECT_THROW((void)normalized_v(series({0.2, 0.2, 0.2}), Normalizer::Max), DegenerateSeriesError);
    EXPECT_THROW((void)normalized_v(series({0.2, 0.2, 0.2}), Normalizer::Mean), DegenerateSeriesError);
    EXPECT_THROW((void)normalized_v(series({0.2, 0.1, 0.0}), Normalizer::Max), DegenerateSeriesError);
}

TEST(Analysis, NormalizedVAffineInvariant) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> base{0.0};
        for (int i = 0; i < 12; ++i) {
            base.push_back(u(rng));
        }
        const double c = 0.1 + 3 * u(rng);
        const double d = u(rng) - 0.5;
        auto moved = base;
        for (auto &x : moved) {
            x = c * x + d;
        }
        for (auto norm : {Normalizer::Max, Normalizer::Mean}) {
            const auto a = normalized_v(series(base), norm);
            const auto b = normalized_v(series(moved), norm);
            for (std::size_t i = 0; i < base.size(); ++i) {
                EXPECT_NEAR(a.values[i], b.values[i], 1e-12);
            }
        }
    }
}

TEST(Analysis, TimeGrid) {
    const TimeGrid g{0, 2, 5};
    EXPECT_EQ(g.values(), (std::vector<double>{0, 0.5, 1.0, 1.5, 2.0}));
    EXPECT_EQ(TimeGrid({0.3, 0.3, 1}).values(), std::vector<double>{0.3});
    EXPECT_THROW((TimeGrid{1, 0, 3}.validate()), ValidationError);
    EXPECT_THROW((TimeGrid{0, 1, 0}.validate()), ValidationError);
}

TEST(Analysis, SeriesValidation) {
    auto s = series({0.1, 0.2, 0.3});
    EXPECT_NO_THROW(s.validate());
    s.times[2] = s.times[1];
    EXPECT_THROW(s.validate(), ValidationError);
    auto t = series({0.1, 0.2});
    t.stderrs.pop_back();
    EXPECT_THROW(t.validate(), ValidationError);
}

ExperimentSpec dark_spec(Backend backend) {
    ExperimentSpec spec;
    spec.model = CentralSpinSpec::hub(2);
    spec.initial = TwoPES{kPi};
    spec.backend = backend;
    spec.grid = {0, 2, 9};
    return spec;
}

TEST(Analysis, OracleExactDarkStateIsFlat) {
    auto spec = dark_spec(Backend::Oracle);
    spec.oracle_mode = OracleMode::Exact;
    const auto s = assemble_series(spec);
    ASSERT_EQ(s.size(), 9U);
    for (double v : s.values) {
        EXPECT_LE(v, 1e-12);
    }
    EXPECT_EQ(s.meta.shots, 0U);
    EXPECT_EQ(s.meta.backend, "oracle-exact");
}

TEST(Analysis, IdealProbabilitiesMatchTrotterReference) {
    for (double phi : {0.0, kPi / 2, kPi}) {
        for (std::size_t n : {1, 2}) {
            auto ideal = dark_spec(Backend::Ideal);
            ideal.initial = TwoPES{phi};
            ideal.trotter_n = n;
            ideal.shots = 0;
            auto oracle = ideal;
            oracle.backend = Backend::Oracle;
            const auto a = assemble_series(ideal);
            const auto b = assemble_series(oracle);
            for (std::size_t i = 0; i < a.size(); ++i) {
                EXPECT_NEAR(a.values[i], b.values[i], 1e-10);
            }
        }
    }
}

TEST(Analysis, OracleMatchesIndependentReference) {
    auto spec = dark_spec(Backend::Oracle);
    spec.initial = TwoPES{kPi / 4};
    const auto s = assemble_series(spec);
    const auto model = std::get<CentralSpinSpec>(spec.model);
    const auto terms = central_spin_terms(model);
    const auto psi0 = initial_state_vector(spec.initial, spec.model);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto ref = trotter_reference(terms, psi0, s.times[i], 1);
        EXPECT_NEAR(s.values[i], excited_population(ref, model.central), 1e-12);
    }
}

TEST(Analysis, SampledSeriesAreDeterministic) {
    auto spec = dark_spec(Backend::Noisy);
    spec.noise = ibmqx4_like_noise();
    spec.shots = 2000;
    spec.seed = 17;
    spec.grid = {0, 2, 4};
    const auto a = assemble_series(spec);
    const auto b = assemble_series(spec);
    EXPECT_EQ(to_csv(a), to_csv(b));
    EXPECT_EQ(a.seeds, (std::vector<std::uint64_t>{17, 18, 19, 20}));
    EXPECT_GT(a.values[0], 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double p = a.values[i];
        EXPECT_DOUBLE_EQ(a.stderrs[i], std::sqrt(p * (1 - p) / 2000));
    }
    spec.seed = 18;
    EXPECT_NE(to_csv(assemble_series(spec)), to_csv(a));
}

TEST(Analysis, CsvFormat) {
    auto s = series({0.0, 0.25});
    s.times = {0.0, 0.5};
    s.stderrs = {0.0, 0.01};
    s.meta.shots = 8192;
    s.seeds = {1, 2};
    EXPECT_EQ(to_csv(s), "tau,value,stderr,shots,seed\n0,0,0,8192,1\n0.5,0.25,0.01,8192,2\n");
}

TEST(Analysis, FileNames) {
    auto spec = dark_spec(Backend::Oracle);
    EXPECT_EQ(series_file_name(spec), "central-spin-L2_2pes-phi3.1416_oracle_N1.csv");
    spec.oracle_mode = OracleMode::Exact;
    spec.trotter_n = 3;
    EXPECT_EQ(series_file_name(spec), "central-spin-L2_2pes-phi3.1416_oracle-exact_N3.csv");
    ExperimentSpec ising;
    ising.model = IsingSpec{Topology::ladder(8), 1.0, 5.0};
    ising.initial = Ferromagnetic{};
    ising.backend = Backend::Noisy;
    EXPECT_EQ(series_file_name(ising), "ising-ladder16-alpha5_ferromagnetic_noisy_N1.csv");
}

TEST(Analysis, Backends) {
    for (auto b : {Backend::Oracle, Backend::Ideal, Backend::Noisy}) {
        EXPECT_EQ(parse_backend(backend_name(b)), b);
    }
    EXPECT_THROW((void)parse_backend("device"), ValidationError);
}

TEST(Analysis, ExperimentValidation) {
    ExperimentSpec bad;
    bad.initial = ThreePES{0};
    EXPECT_THROW(bad.validate(), ValidationError);
    ExperimentSpec zero_n;
    zero_n.trotter_n = 0;
    EXPECT_THROW(zero_n.validate(), ValidationError);
    ExperimentSpec no_shots;
    no_shots.backend = Backend::Noisy;
    no_shots.shots = 0;
    EXPECT_THROW(no_shots.validate(), ValidationError);
}

TEST(Analysis, LargeOracleUsesMatrixFreePath) {
    ExperimentSpec spec;
    spec.model = IsingSpec{Topology::ladder(7), 1.0, 2.0};
    spec.initial = Ferromagnetic{};
    spec.oracle_mode = OracleMode::Exact;
    spec.grid = {0, 1, 3};
    const auto s = assemble_series(spec);
    EXPECT_EQ(s.values[0], 0.0);
    EXPECT_GT(s.values[2], 0.0);
    EXPECT_LT(s.values[2], 1.0);
}

} // namespace
} // namespace spindigit
