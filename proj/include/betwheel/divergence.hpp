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

#include <functional>
#include <stdexcept>

namespace betwheel::divergence {

enum class Family { KL, ItakuraSaito, SquaredEuclidean, CustomGenerator };

/// A Bregman divergence B(x,y) = phi(x) - phi(y) - phi'(y)*(x-y) for a
/// strictly convex generator phi. Built-in families carry closed forms;
/// CustomGenerator evaluates the caller-supplied generator and derivative
/// (no automatic differentiation; both functions are required).
class DivergenceSpec {
public:
    static DivergenceSpec kl();
    static DivergenceSpec itakura_saito();
    static DivergenceSpec squared_euclidean();
    static DivergenceSpec custom(std::function<double(double)> generator,
                                 std::function<double(double)> derivative);

    Family family() const noexcept { return family_; }

    /// phi(t) for this family; throws std::domain_error outside the
    /// generator's domain (KL: (0,1), Itakura-Saito: (0,inf)).
    double generator(double t) const;
    /// phi'(t), same domain rules as generator().
    double derivative(double t) const;

private:
    explicit DivergenceSpec(Family family) : family_(family) {}

    Family family_;
    std::function<double(double)> generator_;
    std::function<double(double)> derivative_;
};

/// Bernoulli KL divergence in the orientation used throughout this
/// library: kl_bernoulli(q, p) = p*ln(p/q) + (1-p)*ln((1-p)/(1-q)).
/// For fixed q it is a nonnegative function of p, zero exactly at p = q.
/// Both arguments must lie strictly inside (0,1).
double kl_bernoulli(double q, double p);

/// Two published small-epsilon series for kl_bernoulli(q, q+eps). They
/// share the quadratic term eps^2/(2q(1-q)) but differ from the cubic
/// term on:
///
///  - DerivativeBased: the true Taylor coefficients of kl_bernoulli in
///    its second argument, cubic term +(2q-1)/(6 q^2 (1-q)^2) * eps^3.
///  - AsPrinted: an alternating variant with cubic term
///    -(1/6) ((1-q)^2+q^2)/(q^2 (1-q)^2) * eps^3, kept verbatim for
///    diagnostics; it does not track the exact divergence beyond O(eps^2).
enum class SeriesVariant { AsPrinted, DerivativeBased };

/// Truncated series value through the requested order (2..5).
double kl_series(double q, double epsilon, SeriesVariant variant, int order);

/// B(x,y) = phi(x) - phi(y) - phi'(y)*(x-y). Closed forms:
///   SquaredEuclidean: (x-y)^2
///   ItakuraSaito:     x/y - ln(x/y) - 1
///   KL (Bernoulli generator t ln t + (1-t) ln(1-t)): kl_bernoulli(y, x)
double bregman(const DivergenceSpec& spec, double x, double y);

/// Divergence from a center probability q to a candidate p, with the
/// candidate in the first Bregman slot; for the KL family this is exactly
/// kl_bernoulli(q, p).
double from_center(const DivergenceSpec& spec, double q, double p);

/// The two probabilities at divergence exactly alpha from the center q,
/// one on each side.
struct UncertaintySet {
    double center_q;
    double budget_alpha;
    double p_minus;
    double p_plus;
};

/// Thrown when the divergence budget exceeds what is attainable on one
/// side of the center before hitting the (0,1) boundary.
class NoRootError : public std::domain_error {
public:
    enum class Side { Lower, Upper };

    NoRootError(Side side, double alpha, double attainable);

    Side side() const noexcept { return side_; }
    double attainable() const noexcept { return attainable_; }

private:
    Side side_;
    double attainable_;
};

/// Solves from_center(spec, q, p) = alpha for p on each side of q by
/// bracketed bisection (brackets [delta, q] and [q, 1-delta], delta =
/// 1e-15), refined until no representable point separates the bracket
/// ends; the returned roots satisfy |residual| <= 1e-12. alpha = 0
/// collapses the set to (q, q).
UncertaintySet solve_uncertainty_set(const DivergenceSpec& spec, double q,
                                     double alpha);

}  // namespace betwheel::divergence
