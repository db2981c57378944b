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
 * The spindigit command line: run, export, verify and presets subcommands.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spindigit/config.hpp"
#include "spindigit/verify.hpp"

namespace spindigit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCapacity = 2;

struct RunOptions {
    bool export_qasm = false;
    bool plot_script = false;
};

/// Writes one CSV per curve (plus a derived CSV when the config asks for
/// post-processing) and manifest.json into config.out_dir. Returns the paths
/// written.
std::vector<std::filesystem::path> cmd_run(const ExperimentConfig &config,
                                           const RunOptions &options,
                                           std::ostream &log);

/// One .qasm file per curve and grid time, or a single time when `time` is
/// set. Returns the paths written.
std::vector<std::filesystem::path> cmd_export(const ExperimentConfig &config,
                                              std::optional<double> time);

/// Prints one JSON line per criterion; returns 0 iff all passed.
int cmd_verify(const VerifyOptions &options, std::ostream &out);

/// Writes `content` to a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path &path,
                      const std::string &content);

/// Full command-line entry point; maps errors to exit codes 1 (invalid
/// input) and 2 (capacity).
int main(int argc, const char *const *argv, std::ostream &out,
         std::ostream &err);

} // namespace spindigit::cli
