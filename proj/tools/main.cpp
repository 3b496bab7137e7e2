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

#include <exception>
#include <iostream>

#include "betwheel/scenario_io.hpp"
#include "commands.hpp"

// Exit codes: 0 success, 1 domain error (invalid values, unattainable
// budgets, non-convergence), 2 usage error (bad flags, bad config file).
int main(int argc, char** argv) {
    CLI::App app{"Robust Kelly fractions and treasury-flywheel simulation"};
    app.require_subcommand(1);

    betwheel::cli::register_kelly(app);
    betwheel::cli::register_fraction(app);
    betwheel::cli::register_flywheel(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);  // prints help or the usage error
        return code == 0 ? 0 : 2;
    } catch (const betwheel::scenario_io::ConfigError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
    return 0;
}
