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

#include <vector>

#include "betwheel/divergence.hpp"
#include "betwheel/kelly.hpp"

namespace betwheel::robust {

enum class PolicyMode { WorstCase, BestCase, EqualWeighted, Heuristic };

/// Selects one of the robust fraction rules. lambda is the risk-aversion
/// parameter of the Heuristic rule and is ignored by the other modes.
struct RobustPolicy {
    PolicyMode mode;
    double lambda = 1.0;
};

/// A recommended fraction plus whether the raw rule value was negative
/// and clamped to zero. None of the rules ever shorts the game.
struct RuleResult {
    kelly::Fraction fraction;
    bool clamped;
};

/// max(0, 2*p_minus - 1): bets as if the least favorable probability in
/// the set were true.
RuleResult worst_case_fraction(const divergence::UncertaintySet& set);

/// max(0, 2*p_plus - 1): bets as if the most favorable probability in
/// the set were true.
RuleResult best_case_fraction(const divergence::UncertaintySet& set);

/// Maximizer of (1/2)*growth(p_minus, f) + (1/2)*growth(p_plus, f),
/// which is max(0, 2*(p_minus+p_plus)/2 - 1) in closed form.
RuleResult equal_weighted_fraction(const divergence::UncertaintySet& set);

/// max(0, 2q-1) * exp(-lambda*alpha): the uncertainty-free optimum
/// discounted exponentially in the divergence budget.
RuleResult heuristic_fraction(double q, double alpha, double lambda);

/// Dispatches to the rule selected by the policy; the Heuristic rule
/// reads q and alpha from the set's center and budget.
RuleResult evaluate(const RobustPolicy& policy,
                    const divergence::UncertaintySet& set);

/// Maximizes sum_i w_i * growth(p_i, f) over f in [0, 1-1e-9] by
/// golden-section search, accurate to |f - argmax| <= 1e-9. The closed
/// form is max(0, 2*sum(w_i p_i) - 1); the search exists to validate the
/// closed-form rules against a derivative-free optimizer. Probabilities
/// must lie in (0,1); weights must be nonnegative and sum to 1 within
/// 1e-9, with one weight per probability.
kelly::Fraction mixture_argmax(const std::vector<double>& probs,
                               const std::vector<double>& weights);

}  // namespace betwheel::robust
