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

#include <cmath>
#include <iostream>
#include <memory>
#include <string>

#include "betwheel/divergence.hpp"
#include "betwheel/robust.hpp"
#include "commands.hpp"

namespace betwheel::cli {

namespace {

divergence::DivergenceSpec spec_by_name(const std::string& name) {
    if (name == "is") return divergence::DivergenceSpec::itakura_saito();
    if (name == "se") return divergence::DivergenceSpec::squared_euclidean();
    return divergence::DivergenceSpec::kl();
}

}  // namespace

void register_fraction(CLI::App& app) {
    CLI::App* cmd = app.add_subcommand(
        "fraction", "Robust Kelly fractions over divergence uncertainty sets");
    cmd->require_subcommand(1);

    struct SolveOpts {
        double q = 0.0;
        double alpha = 0.0;
        std::string divergence = "kl";
    };
    auto solve_opts = std::make_shared<SolveOpts>();
    CLI::App* solve = cmd->add_subcommand(
        "solve", "Probabilities at divergence exactly alpha from the center");
    solve->add_option("--q", solve_opts->q, "Center probability")->required();
    solve->add_option("--alpha", solve_opts->alpha, "Divergence budget")
        ->required();
    solve
        ->add_option("--divergence", solve_opts->divergence,
                     "Divergence family")
        ->check(CLI::IsMember({"kl", "is", "se"}));
    solve->callback([solve_opts] {
        const divergence::DivergenceSpec spec =
            spec_by_name(solve_opts->divergence);
        const divergence::UncertaintySet set = divergence::solve_uncertainty_set(
            spec, solve_opts->q, solve_opts->alpha);
        const double residual_minus =
            divergence::from_center(spec, set.center_q, set.p_minus) -
            set.budget_alpha;
        const double residual_plus =
            divergence::from_center(spec, set.center_q, set.p_plus) -
            set.budget_alpha;
        std::cout << "bound p residual\n"
                  << "lower " << fmt9(set.p_minus) << ' ' << fmt9(residual_minus)
                  << '\n'
                  << "upper " << fmt9(set.p_plus) << ' ' << fmt9(residual_plus)
                  << '\n';
    });

    struct RobustOpts {
        double q = 0.0;
        double alpha = 0.0;
        std::string divergence = "kl";
        double lambda = 1.0;
    };
    auto robust_opts = std::make_shared<RobustOpts>();
    CLI::App* robust_cmd =
        cmd->add_subcommand("robust", "All four robust fraction rules");
    robust_cmd->add_option("--q", robust_opts->q, "Center probability")
        ->required();
    robust_cmd->add_option("--alpha", robust_opts->alpha, "Divergence budget")
        ->required();
    robust_cmd
        ->add_option("--divergence", robust_opts->divergence,
                     "Divergence family")
        ->check(CLI::IsMember({"kl", "is", "se"}));
    robust_cmd->add_option("--lambda", robust_opts->lambda,
                           "Risk aversion of the heuristic rule");
    robust_cmd->callback([robust_opts] {
        const divergence::DivergenceSpec spec =
            spec_by_name(robust_opts->divergence);
        const divergence::UncertaintySet set = divergence::solve_uncertainty_set(
            spec, robust_opts->q, robust_opts->alpha);
        const auto row = [](const char* name, const robust::RuleResult& rule) {
            std::cout << name << ' ' << fmt9(rule.fraction.value()) << ' '
                      << (rule.clamped ? "yes" : "no") << '\n';
        };
        std::cout << "rule fraction clamped\n";
        row("worst", robust::worst_case_fraction(set));
        row("equal", robust::equal_weighted_fraction(set));
        row("best", robust::best_case_fraction(set));
        row("heuristic",
            robust::heuristic_fraction(robust_opts->q, robust_opts->alpha,
                                       robust_opts->lambda));
    });
}

}  // namespace betwheel::cli
