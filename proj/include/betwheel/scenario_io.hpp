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

#include <stdexcept>
#include <string>
#include <vector>

#include "betwheel/flywheel.hpp"

namespace betwheel::scenario_io {

/// Unreadable file, malformed JSON, or a schema violation. The message
/// names the file, the location (line:column for syntax errors) and the
/// offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a scenario from JSON text. `origin` labels diagnostics
/// (usually the file path). The document is validated structurally
/// (types, required keys, no unknown keys) and semantically (the
/// flywheel config invariants); any problem raises ConfigError.
flywheel::ScenarioConfig parse_scenario(const std::string& text,
                                        const std::string& origin);

/// Reads and parses a scenario file.
flywheel::ScenarioConfig load_scenario(const std::string& path);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Time-series CSV: header plus one row per step, columns
/// step,shares,tokens,token_price,share_price,mnav,btc_per_share,
/// btc_yield,btc_gain,btc_dollar_gain,investor_debt,credit_exposure,
/// event_flags. Event flags are |-joined names, empty when none fired.
std::string to_csv(const std::vector<flywheel::StepRecord>& records);

/// Stress-report CSV: header plus one row per shock, columns
/// step,kind,magnitude,margin_calls,shares_sold,proceeds,credit_loss,
/// exposure_before,exposure_after,rounds,converged.
std::string stress_to_csv(
    const std::vector<flywheel::RunResult::ShockOutcome>& shocks);

}  // namespace betwheel::scenario_io
