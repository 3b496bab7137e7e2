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

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "betwheel/flywheel.hpp"
#include "betwheel/scenario_io.hpp"
#include "commands.hpp"

namespace betwheel::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    file << text;
    if (!file) {
        throw std::runtime_error(path + ": write failed");
    }
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
}

// Runs each config on its own worker; results and failures never share
// state. Severity: 2 when any config was invalid, else 1 on any failure.
int run_batch(const std::vector<std::string>& configs, const std::string& out_dir,
              int jobs) {
    std::filesystem::create_directories(out_dir);
    std::atomic<std::size_t> next{0};
    std::mutex stderr_mutex;
    std::atomic<int> worst{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t index = next.fetch_add(1);
            if (index >= configs.size()) return;
            const std::string& config_path = configs[index];
            try {
                const flywheel::ScenarioConfig config =
                    scenario_io::load_scenario(config_path);
                const std::string csv = scenario_io::to_csv(flywheel::run(config));
                const std::string stem =
                    std::filesystem::path(config_path).stem().string();
                write_text((std::filesystem::path(out_dir) / (stem + ".csv"))
                               .string(),
                           csv);
            } catch (const scenario_io::ConfigError& error) {
                const std::lock_guard<std::mutex> lock(stderr_mutex);
                std::cerr << "error: " << error.what() << '\n';
                worst.store(2);
            } catch (const std::exception& error) {
                const std::lock_guard<std::mutex> lock(stderr_mutex);
                std::cerr << "error: " << config_path << ": " << error.what()
                          << '\n';
                int expected = 0;
                worst.compare_exchange_strong(expected, 1);
            }
        }
    };

    const std::size_t worker_count =
        std::min(static_cast<std::size_t>(jobs), configs.size());
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t i = 0; i < worker_count; ++i) {
        workers.emplace_back(worker);
    }
    for (std::thread& thread : workers) {
        thread.join();
    }
    return worst.load();
}

void print_example() {
    const flywheel::CompanyState before{4.0, 1.0, 1.0, 1.0};
    const flywheel::CompanyState after = flywheel::issue_and_buy(before, 1.0);
    const flywheel::Kpis kpi = flywheel::kpis(before, after);

    const auto row = [](const char* name, double a, double b) {
        std::cout << name << ' ' << fmt9(a) << ' ' << fmt9(b) << '\n';
    };
    std::cout << "quantity before after\n";
    row("shares", before.shares_outstanding, after.shares_outstanding);
    row("tokens", before.tokens_held, after.tokens_held);
    row("token_price", before.token_price, after.token_price);
    row("share_price", before.share_price, after.share_price);
    row("mnav", flywheel::mnav(before), flywheel::mnav(after));
    row("btc_per_share", flywheel::btc_per_share(before),
        flywheel::btc_per_share(after));
    std::cout << "btc_yield " << fmt9(kpi.btc_yield) << '\n'
              << "btc_gain " << fmt9(kpi.btc_gain) << '\n'
              << "btc_dollar_gain " << fmt9(kpi.btc_dollar_gain) << '\n';
}

}  // namespace

void register_flywheel(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "flywheel", "Deterministic treasury-flywheel simulation");
    cmd->require_subcommand(1);

    struct RunOpts {
        std::vector<std::string> configs;
        std::string out;
        int jobs = 1;
    };
    auto run_opts = std::make_shared<RunOpts>();
    CLI::App* run_cmd =
        cmd->add_subcommand("run", "Simulate a scenario, write the CSV series");
    run_cmd->add_option("--config", run_opts->configs, "Scenario file (repeatable)")
        ->required();
    run_cmd->add_option("--out", run_opts->out,
                        "Output file (directory in batch mode)");
    run_cmd->add_option("--jobs", run_opts->jobs, "Parallel workers in batch mode")
        ->check(CLI::PositiveNumber);
    run_cmd->callback([run_opts] {
        if (run_opts->configs.size() > 1) {
            if (run_opts->out.empty()) {
                throw CLI::ValidationError(
                    "run", "--out directory is required with multiple configs");
            }
            const int severity =
                run_batch(run_opts->configs, run_opts->out, run_opts->jobs);
            if (severity == 2) {
                throw scenario_io::ConfigError("batch run failed");
            }
            if (severity != 0) {
                throw std::runtime_error("batch run failed");
            }
            return;
        }
        const flywheel::ScenarioConfig config =
            scenario_io::load_scenario(run_opts->configs.front());
        emit(run_opts->out, scenario_io::to_csv(flywheel::run(config)));
    });

    struct StressOpts {
        std::string config;
        std::string out;
    };
    auto stress_opts = std::make_shared<StressOpts>();
    CLI::App* stress_cmd = cmd->add_subcommand(
        "stress", "Simulate a scenario, write the shock stress reports");
    stress_cmd->add_option("--config", stress_opts->config, "Scenario file")
        ->required();
    stress_cmd->add_option("--out", stress_opts->out, "Output file");
    stress_cmd->callback([stress_opts] {
        const flywheel::ScenarioConfig config =
            scenario_io::load_scenario(stress_opts->config);
        const flywheel::RunResult result = flywheel::run_with_reports(config);
        emit(stress_opts->out, scenario_io::stress_to_csv(result.shocks));
    });

    CLI::App* example_cmd = cmd->add_subcommand(
        "example", "One accretive issuance from the canonical starting state");
    example_cmd->callback([] { print_example(); });
}

}  // namespace betwheel::cli
