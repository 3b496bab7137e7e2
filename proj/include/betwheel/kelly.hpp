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

namespace betwheel::kelly {

/// A double-or-nothing bet with a known win probability in the open
/// interval (0,1). Each round the bettor stakes a fraction f of wealth,
/// ending with wealth * (1+f) on a win and wealth * (1-f) on a loss.
class BinaryGame {
public:
    explicit BinaryGame(double win_prob);

    double win_prob() const noexcept { return win_prob_; }

private:
    double win_prob_;
};

/// Fraction of wealth staked per round. Log-growth is finite only for
/// |f| < 1, so construction rejects anything outside the open interval
/// (-1,1). Negative values mean betting the other side of the game.
class Fraction {
public:
    explicit Fraction(double value);

    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Expected log-growth of wealth per round, stored in nats.
struct GrowthRate {
    double nats;

    double bits() const noexcept;
};

/// Exact expected log-growth: p*ln(1+f) + (1-p)*ln(1-f).
GrowthRate growth_rate(const BinaryGame& game, const Fraction& f);

/// The growth-optimal fraction 2p-1.
Fraction optimal_fraction(const BinaryGame& game);

/// Growth at the optimal fraction: ln 2 + p*ln(p) + (1-p)*ln(1-p).
GrowthRate optimal_growth(const BinaryGame& game);

/// Truncated perturbation series of the growth rate around the optimum,
/// evaluated at f = 2p-1 + epsilon:
///
///   optimal_growth(p) - eps^2 / (8 p (1-p))
///                     - (2p-1) eps^3 / (24 p^2 (1-p)^2)   [order 3 only]
///
/// `order` selects the truncation: 2 keeps the quadratic term, 3 adds the
/// cubic. The perturbed fraction 2p-1+epsilon must stay inside (-1,1).
GrowthRate growth_expansion(const BinaryGame& game, double epsilon, int order);

}  // namespace betwheel::kelly
