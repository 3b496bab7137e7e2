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

// Reference implementations kept deliberately independent of the library:
// direct std::log arithmetic, brute-force search, exact rationals. Library
// results are judged against these, never against themselves.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracles {

// Mixture log-growth evaluated term by term from scratch.
inline double mixture_growth(const std::vector<double>& probs,
                             const std::vector<double>& weights, double f) {
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        total += weights[i] *
                 (probs[i] * std::log(1.0 + f) + (1.0 - probs[i]) * std::log(1.0 - f));
    }
    return total;
}

// Brute-force maximizer over f in [0, 1) on a uniform grid.
inline double grid_argmax(const std::vector<double>& probs,
                          const std::vector<double>& weights,
                          double step = 1e-5) {
    double best_f = 0.0;
    double best_value = mixture_growth(probs, weights, 0.0);
    for (double f = step; f < 1.0 - 1e-9; f += step) {
        const double value = mixture_growth(probs, weights, f);
        if (value > best_value) {
            best_value = value;
            best_f = f;
        }
    }
    return best_f;
}

// Central finite-difference second derivative.
template <typename Fn>
double fd_second_derivative(Fn&& fn, double x, double h) {
    return (fn(x + h) - 2.0 * fn(x) + fn(x - h)) / (h * h);
}

// Exact rational arithmetic on int64, for cross-checking the few places
// where the floating-point result must be a short fraction.
struct Rational {
    std::int64_t num;
    std::int64_t den;

    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend Rational operator+(Rational a, Rational b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(Rational a, Rational b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(Rational a, Rational b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

}  // namespace oracles
