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

#include "betwheel/robust.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace betwheel::robust {

namespace {

void require_valid_set(const divergence::UncertaintySet& set) {
    const bool probabilities_ok =
        set.p_minus > 0.0 && set.p_minus <= set.center_q &&
        set.center_q <= set.p_plus && set.p_plus < 1.0;
    if (!probabilities_ok || !(set.budget_alpha >= 0.0)) {
        throw std::invalid_argument(
            "robust rule: uncertainty set must satisfy 0 < p_minus <= q <= "
            "p_plus < 1 and alpha >= 0");
    }
}

RuleResult clamp_to_rule(double raw) {
    if (raw <= 0.0) {
        return {kelly::Fraction(0.0), raw < 0.0};
    }
    return {kelly::Fraction(raw), false};
}

}  // namespace

RuleResult worst_case_fraction(const divergence::UncertaintySet& set) {
    require_valid_set(set);
    return clamp_to_rule(2.0 * set.p_minus - 1.0);
}

RuleResult best_case_fraction(const divergence::UncertaintySet& set) {
    require_valid_set(set);
    return clamp_to_rule(2.0 * set.p_plus - 1.0);
}

RuleResult equal_weighted_fraction(const divergence::UncertaintySet& set) {
    require_valid_set(set);
    const double mean = 0.5 * (set.p_minus + set.p_plus);
    return clamp_to_rule(2.0 * mean - 1.0);
}

RuleResult heuristic_fraction(double q, double alpha, double lambda) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::invalid_argument(
            "heuristic_fraction: q must lie strictly inside (0,1), got " +
            std::to_string(q));
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument(
            "heuristic_fraction: alpha must be finite and >= 0, got " +
            std::to_string(alpha));
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument(
            "heuristic_fraction: lambda must be finite and >= 0, got " +
            std::to_string(lambda));
    }
    const double base = 2.0 * q - 1.0;
    if (base <= 0.0) {
        return {kelly::Fraction(0.0), base < 0.0};
    }
    return {kelly::Fraction(base * std::exp(-lambda * alpha)), false};
}

RuleResult evaluate(const RobustPolicy& policy,
                    const divergence::UncertaintySet& set) {
    switch (policy.mode) {
        case PolicyMode::WorstCase:
            return worst_case_fraction(set);
        case PolicyMode::BestCase:
            return best_case_fraction(set);
        case PolicyMode::EqualWeighted:
            return equal_weighted_fraction(set);
        case PolicyMode::Heuristic:
            return heuristic_fraction(set.center_q, set.budget_alpha,
                                      policy.lambda);
    }
    throw std::logic_error("evaluate: unknown policy mode");
}

kelly::Fraction mixture_argmax(const std::vector<double>& probs,
                               const std::vector<double>& weights) {
    if (probs.empty()) {
        throw std::invalid_argument("mixture_argmax: probs must be non-empty");
    }
    if (weights.size() != probs.size()) {
        throw std::invalid_argument(
            "mixture_argmax: need one weight per probability, got " +
            std::to_string(weights.size()) + " weights for " +
            std::to_string(probs.size()) + " probabilities");
    }
    double weight_sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument(
                "mixture_argmax: weights must be finite and nonnegative");
        }
        weight_sum += w;
    }
    if (std::abs(weight_sum - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "mixture_argmax: weights must sum to 1, got " +
            std::to_string(weight_sum));
    }

    std::vector<kelly::BinaryGame> games;
    games.reserve(probs.size());
    for (double p : probs) {
        games.emplace_back(p);  // rejects p outside (0,1)
    }

    const auto objective = [&](double f) {
        const kelly::Fraction fraction(f);
        double total = 0.0;
        for (std::size_t i = 0; i < games.size(); ++i) {
            total += weights[i] * kelly::growth_rate(games[i], fraction).nats;
        }
        return total;
    };

    // Golden-section search; the objective is strictly concave in f, so
    // the bracket contracts onto the unique maximizer (possibly at 0).
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 0.0;
    double hi = 1.0 - 1e-9;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = objective(x1);
        }
    }
    return kelly::Fraction(0.5 * (lo + hi));
}

}  // namespace betwheel::robust
