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

#include "betwheel/divergence.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace betwheel::divergence {

namespace {

void require_probability(double value, const char* name) {
    if (!(value > 0.0 && value < 1.0)) {
        throw std::invalid_argument(std::string(name) +
                                    " must lie strictly inside (0,1), got " +
                                    std::to_string(value));
    }
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) {
        throw std::domain_error(std::string(what) +
                                " requires a strictly positive argument, got " +
                                std::to_string(value));
    }
}

}  // namespace

DivergenceSpec DivergenceSpec::kl() { return DivergenceSpec(Family::KL); }

DivergenceSpec DivergenceSpec::itakura_saito() {
    return DivergenceSpec(Family::ItakuraSaito);
}

DivergenceSpec DivergenceSpec::squared_euclidean() {
    return DivergenceSpec(Family::SquaredEuclidean);
}

DivergenceSpec DivergenceSpec::custom(std::function<double(double)> generator,
                                      std::function<double(double)> derivative) {
    if (!generator || !derivative) {
        throw std::invalid_argument(
            "DivergenceSpec::custom: generator and derivative are both required");
    }
    DivergenceSpec spec(Family::CustomGenerator);
    spec.generator_ = std::move(generator);
    spec.derivative_ = std::move(derivative);
    return spec;
}

double DivergenceSpec::generator(double t) const {
    switch (family_) {
        case Family::KL:
            if (!(t > 0.0 && t < 1.0)) {
                throw std::domain_error(
                    "KL generator is defined on (0,1), got " + std::to_string(t));
            }
            return t * std::log(t) + (1.0 - t) * std::log(1.0 - t);
        case Family::ItakuraSaito:
            require_positive(t, "Itakura-Saito generator");
            return -std::log(t);
        case Family::SquaredEuclidean:
            return t * t;
        case Family::CustomGenerator:
            return generator_(t);
    }
    throw std::logic_error("DivergenceSpec: unknown family");
}

double DivergenceSpec::derivative(double t) const {
    switch (family_) {
        case Family::KL:
            if (!(t > 0.0 && t < 1.0)) {
                throw std::domain_error(
                    "KL generator is defined on (0,1), got " + std::to_string(t));
            }
            return std::log(t / (1.0 - t));
        case Family::ItakuraSaito:
            require_positive(t, "Itakura-Saito generator");
            return -1.0 / t;
        case Family::SquaredEuclidean:
            return 2.0 * t;
        case Family::CustomGenerator:
            return derivative_(t);
    }
    throw std::logic_error("DivergenceSpec: unknown family");
}

double kl_bernoulli(double q, double p) {
    require_probability(q, "kl_bernoulli: q");
    require_probability(p, "kl_bernoulli: p");
    return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double kl_series(double q, double epsilon, SeriesVariant variant, int order) {
    if (order < 2 || order > 5) {
        throw std::invalid_argument("kl_series: order must lie in 2..5, got " +
                                    std::to_string(order));
    }
    require_probability(q, "kl_series: q");
    if (!(q + epsilon > 0.0 && q + epsilon < 1.0)) {
        throw std::invalid_argument("kl_series: q+epsilon must stay inside (0,1)");
    }

    const double r = 1.0 - q;
    const double e2 = epsilon * epsilon;
    const double e3 = e2 * epsilon;
    const double e4 = e3 * epsilon;
    const double e5 = e4 * epsilon;

    double value = e2 / (2.0 * q * r);
    if (variant == SeriesVariant::AsPrinted) {
        if (order >= 3) value -= (r * r + q * q) / (6.0 * q * q * r * r) * e3;
        if (order >= 4) value += (r * r * r - q * q * q) / (12.0 * q * q * q * r * r * r) * e4;
        if (order >= 5) {
            const double q4 = q * q * q * q;
            const double r4 = r * r * r * r;
            value -= (r4 + q4) / (20.0 * q4 * r4) * e5;
        }
    } else {
        if (order >= 3) value += (2.0 * q - 1.0) / (6.0 * q * q * r * r) * e3;
        if (order >= 4) value += (r * r * r + q * q * q) / (12.0 * q * q * q * r * r * r) * e4;
        if (order >= 5) {
            const double q4 = q * q * q * q;
            const double r4 = r * r * r * r;
            value += (q4 - r4) / (20.0 * q4 * r4) * e5;
        }
    }
    return value;
}

double bregman(const DivergenceSpec& spec, double x, double y) {
    switch (spec.family()) {
        case Family::KL:
            return kl_bernoulli(y, x);
        case Family::ItakuraSaito: {
            require_positive(x, "Itakura-Saito divergence");
            require_positive(y, "Itakura-Saito divergence");
            const double ratio = x / y;
            return ratio - std::log(ratio) - 1.0;
        }
        case Family::SquaredEuclidean: {
            const double d = x - y;
            return d * d;
        }
        case Family::CustomGenerator:
            return spec.generator(x) - spec.generator(y) -
                   spec.derivative(y) * (x - y);
    }
    throw std::logic_error("bregman: unknown family");
}

double from_center(const DivergenceSpec& spec, double q, double p) {
    return bregman(spec, p, q);
}

namespace {

constexpr double kBracketDelta = 1e-15;
constexpr double kResidualTol = 1e-12;

// Bisects from_center(spec, q, .) - alpha on [lo, hi]; the divergence is
// monotone away from the center, so a sign change over the bracket pins a
// unique root. Runs until no representable midpoint remains, then returns
// the bracket end with the smaller residual.
double bisect_side(const DivergenceSpec& spec, double q, double alpha,
                   double lo, double hi) {
    double flo = from_center(spec, q, lo) - alpha;
    double fhi = from_center(spec, q, hi) - alpha;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket fully resolved
        const double fmid = from_center(spec, q, mid) - alpha;
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

}  // namespace

NoRootError::NoRootError(Side side, double alpha, double attainable)
    : std::domain_error(std::string("solve_uncertainty_set: no root on the ") +
                        (side == Side::Lower ? "lower" : "upper") +
                        " side: budget alpha=" + std::to_string(alpha) +
                        " exceeds the attainable divergence " +
                        std::to_string(attainable) + " on that side"),
      side_(side),
      attainable_(attainable) {}

UncertaintySet solve_uncertainty_set(const DivergenceSpec& spec, double q,
                                     double alpha) {
    require_probability(q, "solve_uncertainty_set: q");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument(
            "solve_uncertainty_set: alpha must be finite and >= 0, got " +
            std::to_string(alpha));
    }
    if (alpha == 0.0) {
        return {q, 0.0, q, q};
    }

    const double lo_end = kBracketDelta;
    const double hi_end = 1.0 - kBracketDelta;

    const double lo_attainable = from_center(spec, q, lo_end);
    if (!(lo_attainable >= alpha)) {
        throw NoRootError(NoRootError::Side::Lower, alpha, lo_attainable);
    }
    const double hi_attainable = from_center(spec, q, hi_end);
    if (!(hi_attainable >= alpha)) {
        throw NoRootError(NoRootError::Side::Upper, alpha, hi_attainable);
    }

    const double p_minus = bisect_side(spec, q, alpha, lo_end, q);
    const double p_plus = bisect_side(spec, q, alpha, q, hi_end);

    if (std::abs(from_center(spec, q, p_minus) - alpha) > kResidualTol ||
        std::abs(from_center(spec, q, p_plus) - alpha) > kResidualTol) {
        throw std::runtime_error(
            "solve_uncertainty_set: bisection failed to reach residual 1e-12");
    }
    return {q, alpha, p_minus, p_plus};
}

}  // namespace betwheel::divergence
