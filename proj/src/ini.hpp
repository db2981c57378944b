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

#pragma once

#include <istream>
#include <sstream>
#include <string>

namespace spindigit::detail {

// Boost's INI reader only accepts comments on their own line; drop trailing
// " ; ..." and " # ..." so values can carry inline annotations.
inline std::istringstream strip_inline_comments(std::istream &in) {
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        for (std::size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == ';' || line[i] == '#') &&
                (line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line.erase(i);
                break;
            }
        }
        out << line << '\n';
    }
    return std::istringstream(out.str());
}

} // namespace spindigit::detail
