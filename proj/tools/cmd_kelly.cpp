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

#include <iostream>
#include <memory>
#include <string>

#include "betwheel/kelly.hpp"
#include "commands.hpp"

namespace betwheel::cli {

namespace {

double in_unit(const kelly::GrowthRate& rate, const std::string& unit) {
    return unit == "bits" ? rate.bits() : rate.nats;
}

}  // namespace

void register_kelly(CLI::App& app) {
    CLI::App* cmd =
        app.add_subcommand("kelly", "Log-optimal betting calculations");
    cmd->require_subcommand(1);

    struct GrowthOpts {
        double p = 0.0;
        double f = 0.0;
        std::string unit = "nats";
    };
    auto growth_opts = std::make_shared<GrowthOpts>();
    CLI::App* growth = cmd->add_subcommand(
        "growth", "Expected log-growth of a fractional bet");
    growth->add_option("--p", growth_opts->p, "Win probability")->required();
    growth->add_option("--f", growth_opts->f, "Fraction of wealth staked")
        ->required();
    growth->add_option("--unit", growth_opts->unit, "Output unit")
        ->check(CLI::IsMember({"nats", "bits"}));
    growth->callback([growth_opts] {
        const kelly::BinaryGame game(growth_opts->p);
        const kelly::Fraction fraction(growth_opts->f);
        std::cout << fmt9(in_unit(kelly::growth_rate(game, fraction),
                                  growth_opts->unit))
                  << '\n';
    });

    struct OptimalOpts {
        double p = 0.0;
    };
    auto optimal_opts = std::make_shared<OptimalOpts>();
    CLI::App* optimal =
        cmd->add_subcommand("optimal", "Growth-optimal fraction 2p-1");
    optimal->add_option("--p", optimal_opts->p, "Win probability")->required();
    optimal->callback([optimal_opts] {
        const kelly::BinaryGame game(optimal_opts->p);
        std::cout << fmt9(kelly::optimal_fraction(game).value()) << '\n';
    });

    struct ExpandOpts {
        double p = 0.0;
        double epsilon = 0.0;
        int order = 3;
        std::string unit = "nats";
    };
    auto expand_opts = std::make_shared<ExpandOpts>();
    CLI::App* expand = cmd->add_subcommand(
        "expand", "Perturbation series of growth around the optimum");
    expand->add_option("--p", expand_opts->p, "Win probability")->required();
    expand
        ->add_option("--epsilon", expand_opts->epsilon,
                     "Offset from the optimal fraction")
        ->required();
    expand->add_option("--order", expand_opts->order, "Truncation order")
        ->check(CLI::IsMember({2, 3}));
    expand->add_option("--unit", expand_opts->unit, "Output unit")
        ->check(CLI::IsMember({"nats", "bits"}));
    expand->callback([expand_opts] {
        const kelly::BinaryGame game(expand_opts->p);
        const kelly::Fraction perturbed(kelly::optimal_fraction(game).value() +
                                        expand_opts->epsilon);
        const double exact =
            in_unit(kelly::growth_rate(game, perturbed), expand_opts->unit);
        const double series = in_unit(
            kelly::growth_expansion(game, expand_opts->epsilon,
                                    expand_opts->order),
            expand_opts->unit);
        std::cout << "exact " << fmt9(exact) << '\n'
                  << "series " << fmt9(series) << '\n'
                  << "difference " << fmt9(exact - series) << '\n';
    });
}

}  // namespace betwheel::cli
