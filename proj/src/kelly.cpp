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

#include "betwheel/kelly.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace betwheel::kelly {

BinaryGame::BinaryGame(double win_prob) : win_prob_(win_prob) {
    // !(x > 0 && x < 1) also rejects NaN.
    if (!(win_prob > 0.0 && win_prob < 1.0)) {
        throw std::invalid_argument(
            "BinaryGame: win probability must lie in (0,1), got " +
            std::to_string(win_prob));
    }
}

Fraction::Fraction(double value) : value_(value) {
    if (!(value > -1.0 && value < 1.0)) {
        throw std::invalid_argument(
            "Fraction: wealth fraction must lie in (-1,1), got " +
            std::to_string(value));
    }
}

double GrowthRate::bits() const noexcept { return nats / std::numbers::ln2; }

GrowthRate growth_rate(const BinaryGame& game, const Fraction& f) {
    const double p = game.win_prob();
    const double x = f.value();
    // log1p keeps the value exact at f = 0 and accurate for small stakes.
    return {p * std::log1p(x) + (1.0 - p) * std::log1p(-x)};
}

Fraction optimal_fraction(const BinaryGame& game) {
    return Fraction{2.0 * game.win_prob() - 1.0};
}

GrowthRate optimal_growth(const BinaryGame& game) {
    const double p = game.win_prob();
    return {std::numbers::ln2 + p * std::log(p) + (1.0 - p) * std::log(1.0 - p)};
}

GrowthRate growth_expansion(const BinaryGame& game, double epsilon, int order) {
    if (order != 2 && order != 3) {
        throw std::invalid_argument("growth_expansion: order must be 2 or 3, got " +
                                    std::to_string(order));
    }
    const double p = game.win_prob();
    const double perturbed = 2.0 * p - 1.0 + epsilon;
    if (!(perturbed > -1.0 && perturbed < 1.0)) {
        throw std::invalid_argument(
            "growth_expansion: perturbed fraction 2p-1+epsilon leaves (-1,1)");
    }

    const double pq = p * (1.0 - p);
    double value = optimal_growth(game).nats - epsilon * epsilon / (8.0 * pq);
    if (order == 3) {
        value -= (2.0 * p - 1.0) * epsilon * epsilon * epsilon / (24.0 * pq * pq);
    }
    return {value};
}

}  // namespace betwheel::kelly
