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
 * OpenQASM 2.0 text for the {u3, cx} subset with a single quantum register.
 *
 * Export layout:
 *
 *     OPENQASM 2.0;
 *     include "qelib1.inc";
 *     qreg q[<width>];
 *     u3(<theta>,<phi>,<lambda>) q[<i>];
 *     cx q[<control>],q[<target>];
 *
 * Angles are printed in shortest round-trip decimal form, so import(export(c))
 * reproduces every parameter bit for bit.
 */
#pragma once

#include <string>
#include <string_view>

#include "spindigit/circuit.hpp"

namespace spindigit {

[[nodiscard]] std::string export_openqasm(const Circuit &circuit);

/// Parses the exported subset. Gates are layered with EarliestCompatible.
/// Angle arguments may be simple expressions over numbers and `pi`.
/// Throws ParseError (with line/column) on malformed text, UnsupportedError
/// for constructs outside the subset, and ValidationError for invalid
/// operands such as `cx q[0],q[0];`.
[[nodiscard]] Circuit import_openqasm(std::string_view text);

} // namespace spindigit
