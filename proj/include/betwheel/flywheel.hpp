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

#include <optional>
#include <stdexcept>
#include <vector>

namespace betwheel::flywheel {

/// A treasury company holding crypto tokens, financed purely by equity.
/// Counts are real-valued; fractional shares and tokens are allowed.
struct CompanyState {
    double shares_outstanding;  // > 0
    double tokens_held;         // >= 0
    double token_price;         // > 0
    double share_price;         // > 0
};

double market_cap(const CompanyState& state);
double nav(const CompanyState& state);
double btc_per_share(const CompanyState& state);

/// Thrown by mnav() when the company holds no token value.
class ZeroNavError : public std::domain_error {
public:
    ZeroNavError();
};

/// Market capitalization over net asset value; requires nav > 0.
double mnav(const CompanyState& state);

/// A shareholder who may lever up against the stock.
struct InvestorState {
    double shares_held;  // >= 0
    double cash;         // >= 0
    double debt;         // >= 0
};

/// The lender behind all investor loans. exposure mirrors the sum of
/// investor debts at all times; haircut h caps each investor's debt at
/// (1-h) times portfolio value.
struct CreditProvider {
    double haircut;         // in [0,1]
    double exposure;        // >= 0
    double exposure_limit;  // > 0
};

struct World {
    CompanyState company;
    std::vector<InvestorState> investors;
    CreditProvider credit;
};

/// Issues new shares at the prevailing price, converts the proceeds to
/// tokens at the current token price, and reprices the stock so that
/// mNAV is unchanged. Token price is untouched; impact belongs to step().
CompanyState issue_and_buy(const CompanyState& state, double new_shares);

struct Kpis {
    double mnav;
    double btc_per_share;
    double btc_yield;        // relative change in btc_per_share
    double btc_gain;         // tokens_before * btc_yield
    double btc_dollar_gain;  // btc_gain * token_price_after
};

/// KPIs of the transition before -> after. Yield needs a nonzero starting
/// btc_per_share; a zero one raises std::domain_error.
Kpis kpis(const CompanyState& before, const CompanyState& after);

enum class MnavModel { Constant, Path, Impact };
enum class ImpactForm { Linear, Sqrt };

/// Price response to net flow: multiplier 1 + coeff * f(flow_fraction)
/// with f = identity or square root. token_supply is the denominator
/// proxy for token flow fractions.
struct ImpactParams {
    double share_coeff = 0.0;
    double token_coeff = 0.0;
    double token_supply = 0.0;  // > 0 when token_coeff > 0
    ImpactForm form = ImpactForm::Linear;
};

enum class ShockKind { HaircutRaise, TokenPriceDrop, MnavCompression };

/// HaircutRaise adds magnitude to the haircut (result must stay <= 1).
/// TokenPriceDrop scales the token price by (1 - magnitude) and the
/// share price by the same factor, holding mNAV fixed through the crash.
/// MnavCompression reprices the stock to magnitude * nav / shares.
struct Shock {
    ShockKind kind;
    double magnitude;
};

struct ScheduledShock {
    int step;  // within [0, horizon)
    Shock shock;
};

enum class IssuanceKind { Shares, Proceeds };

/// Full scenario description. Per-step schedules (issuance, haircut) hold
/// either one value or exactly horizon values. A single haircut value
/// only initializes the credit provider, so shock-driven raises persist;
/// a full-length haircut schedule is re-applied at each step start,
/// before any shock scheduled for that step.
struct ScenarioConfig {
    CompanyState company;
    std::vector<InvestorState> investors;
    int horizon = 0;

    IssuanceKind issuance_kind = IssuanceKind::Shares;
    std::vector<double> issuance;  // shares or proceeds per step
    std::vector<double> haircut;   // in [0,1]
    double exposure_limit = 0.0;

    MnavModel mnav_model = MnavModel::Constant;
    double mnav_value = 0.0;        // Constant model; 0 derives from company
    std::vector<double> mnav_path;  // Path model; one value per step
    ImpactParams impact;            // Impact model

    std::vector<ScheduledShock> shocks;
};

/// Validates every config invariant; throws std::invalid_argument naming
/// the offending field.
void validate(const ScenarioConfig& config);

struct StepEvents {
    bool loan_granted = false;
    bool loan_refused = false;  // a loan was cut by the exposure limit
    bool margin_call = false;
    bool liquidation = false;
    bool infeasible = false;  // issuance could not be fully absorbed
};

struct StepRecord {
    int step = 0;
    CompanyState company{};  // post-step snapshot
    std::vector<InvestorState> investors;
    CreditProvider credit{};
    Kpis kpis{};          // before -> after over this step
    double investor_debt = 0.0;  // sum over investors, post-step
    StepEvents events;
};

/// Executes one flywheel cycle in fixed order: issue scheduled shares,
/// size need-based loans (cash first, then credit, in investor index
/// order, against pre-purchase portfolio value), buy the new shares at
/// the prevailing price, convert proceeds to tokens (with token impact
/// under the Impact model), reprice the stock per the mNAV model, then
/// re-check every collateral constraint. Unabsorbed issuance shrinks the
/// actual issue and flags the infeasible event. Deterministic.
StepRecord step(World& world, const ScenarioConfig& config, int step_index);

/// Drives step() over the horizon, applying scheduled shocks at the
/// start of their step via the stress machinery. Throws
/// std::runtime_error if an injected shock's liquidation cascade fails
/// to converge.
std::vector<StepRecord> run(const ScenarioConfig& config);

struct InvestorOutcome {
    int investor = 0;
    double debt_before = 0.0;
    double shares_sold = 0.0;
    double proceeds = 0.0;
    double debt_after = 0.0;
    double loss = 0.0;  // written off by the credit provider
    bool margin_called = false;
};

struct StressReport {
    Shock shock{};
    bool converged = true;
    int rounds = 0;  // liquidation passes that sold anything
    double share_price_before = 0.0;
    double share_price_after = 0.0;
    double exposure_before = 0.0;
    double exposure_after = 0.0;
    double total_shares_sold = 0.0;
    double total_proceeds = 0.0;
    double credit_loss = 0.0;
    std::vector<InvestorOutcome> investors;
};

/// Applies the shock, then force-sells shares of collateral-violating
/// investors at the post-shock price until every constraint holds or
/// holdings exhaust. Each investor sells the minimal amount restoring
/// the constraint (everything, when the haircut is zero); exhausted
/// holdings with debt left become a credit-provider write-off. When
/// impact is supplied, each selling round depresses the share price by
/// the configured response to the round's sold fraction, and rounds
/// repeat to a fixed point. A cascade still unsettled after max_rounds
/// is reported with converged = false, never thrown.
StressReport stress(World& world, const Shock& shock,
                    const std::optional<ImpactParams>& impact = std::nullopt,
                    int max_rounds = 100);

struct RunResult {
    std::vector<StepRecord> records;
    struct ShockOutcome {
        int step;
        StressReport report;
    };
    std::vector<ShockOutcome> shocks;
};

/// run() plus the stress report of every scheduled shock, in the order
/// the shocks fired.
RunResult run_with_reports(const ScenarioConfig& config);

}  // namespace betwheel::flywheel
