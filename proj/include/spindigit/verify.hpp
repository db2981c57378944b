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
 * End-to-end self-check: the acceptance criteria as executable checks, each
 * with a runtime budget, reported as one JSON object per line.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spindigit/circuit.hpp"

namespace spindigit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double runtime_s = 0.0;
    double limit_s = 0.0;
    std::string detail;
};

struct VerifyOptions {
    /// Applied to every compiled Trotter circuit before criterion 1 runs it;
    /// used to check that a compiler bug is caught.
    std::function<Circuit(const Circuit &)> mutate;
    /// Directory holding reference CSVs for the oracle presets; skipped when
    /// unset.
    std::optional<std::string> golden_dir;
    std::uint64_t seed = 20180725;
    /// Criteria to run; empty means all.
    std::vector<int> only;
};

inline constexpr int kCriterionCount = 11;

[[nodiscard]] CriterionResult run_criterion(int id, const VerifyOptions &options);
[[nodiscard]] std::vector<CriterionResult>
run_verification(const VerifyOptions &options = {});

/// {"criterion":1,"name":...,"pass":true,"runtime_s":...,"limit_s":...,
///  "detail":...}
[[nodiscard]] std::string to_json_line(const CriterionResult &result);

/// Reverses control and target of every CNOT whose tag contains "/zz:".
[[nodiscard]] Circuit flip_zz_cnots(const Circuit &circuit);

} // namespace spindigit
