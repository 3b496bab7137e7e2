// Copyright 2026 the betwheel authors
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

#include <cstdio>
#include <string>

#include "CLI11.hpp"

namespace betwheel::cli {

void register_kelly(CLI::App& app);
void register_fraction(CLI::App& app);
void register_flywheel(CLI::App& app);

/// Table precision: 9 significant digits (CSV output stays lossless via
/// the shortest round-trip form instead).
inline std::string fmt9(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

}  // namespace betwheel::cli
