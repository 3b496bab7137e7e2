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

#include "betwheel/flywheel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace betwheel::flywheel {

namespace {

// Collateral slack below this (relative to the debt) does not count as a
// violation; it absorbs round-off from loan sizing and repricing.
constexpr double kCollateralTol = 1e-9;

void require_valid_company(const CompanyState& state) {
    const bool ok = std::isfinite(state.shares_outstanding) &&
                    state.shares_outstanding > 0.0 &&
                    std::isfinite(state.tokens_held) && state.tokens_held >= 0.0 &&
                    std::isfinite(state.token_price) && state.token_price > 0.0 &&
                    std::isfinite(state.share_price) && state.share_price > 0.0;
    if (!ok) {
        throw std::invalid_argument(
            "CompanyState: needs shares_outstanding > 0, tokens_held >= 0, "
            "token_price > 0, share_price > 0");
    }
}

double schedule_at(const std::vector<double>& schedule, int step_index) {
    return schedule.size() == 1
               ? schedule.front()
               : schedule[static_cast<std::size_t>(step_index)];
}

double flow_response(double flow_fraction, ImpactForm form) {
    return form == ImpactForm::Sqrt ? std::sqrt(flow_fraction) : flow_fraction;
}

bool collateral_violated(const InvestorState& investor, double haircut,
                         double share_price) {
    const double cap = (1.0 - haircut) * investor.shares_held * share_price;
    return investor.debt - cap > kCollateralTol * std::max(1.0, investor.debt);
}

void require_legal_shock(const Shock& shock) {
    const double m = shock.magnitude;
    switch (shock.kind) {
        case ShockKind::HaircutRaise:
            if (!(m >= 0.0) || !std::isfinite(m)) {
                throw std::domain_error(
                    "HaircutRaise: magnitude must be finite and >= 0");
            }
            return;
        case ShockKind::TokenPriceDrop:
            if (!(m >= 0.0 && m < 1.0)) {
                throw std::domain_error(
                    "TokenPriceDrop: magnitude must lie in [0,1)");
            }
            return;
        case ShockKind::MnavCompression:
            if (!(m > 0.0) || !std::isfinite(m)) {
                throw std::domain_error(
                    "MnavCompression: target mNAV must be finite and > 0");
            }
            return;
    }
    throw std::logic_error("Shock: unknown kind");
}

}  // namespace

double market_cap(const CompanyState& state) {
    return state.shares_outstanding * state.share_price;
}

double nav(const CompanyState& state) {
    return state.tokens_held * state.token_price;
}

double btc_per_share(const CompanyState& state) {
    return state.tokens_held / state.shares_outstanding;
}

ZeroNavError::ZeroNavError()
    : std::domain_error("mnav: undefined when the company holds no token value "
                        "(tokens_held * token_price = 0)") {}

double mnav(const CompanyState& state) {
    require_valid_company(state);
    const double v = nav(state);
    if (!(v > 0.0)) {
        throw ZeroNavError();
    }
    return market_cap(state) / v;
}

CompanyState issue_and_buy(const CompanyState& state, double new_shares) {
    if (!(new_shares > 0.0) || !std::isfinite(new_shares)) {
        throw std::invalid_argument(
            "issue_and_buy: new_shares must be finite and > 0, got " +
            std::to_string(new_shares));
    }
    const double mnav_before = mnav(state);
    CompanyState next = state;
    const double proceeds = new_shares * state.share_price;
    next.tokens_held += proceeds / state.token_price;
    next.shares_outstanding += new_shares;
    next.share_price = mnav_before * nav(next) / next.shares_outstanding;
    return next;
}

Kpis kpis(const CompanyState& before, const CompanyState& after) {
    require_valid_company(before);
    const double bps_before = btc_per_share(before);
    if (!(bps_before > 0.0)) {
        throw std::domain_error(
            "kpis: btc_per_share of the starting state must be positive");
    }
    Kpis k;
    k.mnav = mnav(after);
    k.btc_per_share = btc_per_share(after);
    k.btc_yield = (k.btc_per_share - bps_before) / bps_before;
    k.btc_gain = before.tokens_held * k.btc_yield;
    k.btc_dollar_gain = k.btc_gain * after.token_price;
    return k;
}

void validate(const ScenarioConfig& config) {
    require_valid_company(config.company);
    if (!(config.company.tokens_held > 0.0)) {
        throw std::invalid_argument(
            "config.company.tokens_held must be > 0 so mNAV is defined");
    }
    if (config.horizon < 0) {
        throw std::invalid_argument("config.horizon must be >= 0");
    }
    for (std::size_t i = 0; i < config.investors.size(); ++i) {
        const InvestorState& inv = config.investors[i];
        const bool ok = std::isfinite(inv.shares_held) && inv.shares_held >= 0.0 &&
                        std::isfinite(inv.cash) && inv.cash >= 0.0 &&
                        std::isfinite(inv.debt) && inv.debt >= 0.0;
        if (!ok) {
            throw std::invalid_argument(
                "config.investors[" + std::to_string(i) +
                "]: shares_held, cash, and debt must be finite and >= 0");
        }
    }

    const auto check_schedule = [&](const std::vector<double>& schedule,
                                    const char* name) {
        if (schedule.empty()) {
            throw std::invalid_argument(std::string("config.") + name +
                                        " must be non-empty");
        }
        if (schedule.size() != 1 &&
            schedule.size() != static_cast<std::size_t>(config.horizon)) {
            throw std::invalid_argument(
                std::string("config.") + name +
                " must hold one value or exactly horizon values");
        }
    };
    check_schedule(config.issuance, "issuance");
    for (double v : config.issuance) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(
                "config.issuance values must be finite and >= 0");
        }
    }
    check_schedule(config.haircut, "haircut");
    for (double h : config.haircut) {
        if (!(h >= 0.0 && h <= 1.0)) {
            throw std::invalid_argument(
                "config.haircut values must lie in [0,1]");
        }
    }
    if (!(config.exposure_limit > 0.0) || !std::isfinite(config.exposure_limit)) {
        throw std::invalid_argument("config.exposure_limit must be finite and > 0");
    }

    if (!(config.mnav_value >= 0.0) || !std::isfinite(config.mnav_value)) {
        throw std::invalid_argument(
            "config.mnav_value must be finite and >= 0 (0 derives it from the "
            "company state)");
    }
    if (config.mnav_model == MnavModel::Path) {
        if (config.mnav_path.size() != static_cast<std::size_t>(config.horizon)) {
            throw std::invalid_argument(
                "config.mnav_path must hold exactly horizon values");
        }
        for (double m : config.mnav_path) {
            if (!(m > 0.0) || !std::isfinite(m)) {
                throw std::invalid_argument(
                    "config.mnav_path values must be finite and > 0");
            }
        }
    }
    if (config.mnav_model == MnavModel::Impact) {
        const ImpactParams& imp = config.impact;
        if (!(imp.share_coeff >= 0.0) || !std::isfinite(imp.share_coeff) ||
            !(imp.token_coeff >= 0.0) || !std::isfinite(imp.token_coeff)) {
            throw std::invalid_argument(
                "config.impact coefficients must be finite and >= 0");
        }
        if (imp.token_coeff > 0.0 && !(imp.token_supply > 0.0)) {
            throw std::invalid_argument(
                "config.impact.token_supply must be > 0 when token_coeff > 0");
        }
    }

    for (const ScheduledShock& sch : config.shocks) {
        if (sch.step < 0 || sch.step >= config.horizon) {
            throw std::invalid_argument(
                "config.shocks: step " + std::to_string(sch.step) +
                " lies outside the horizon");
        }
        require_legal_shock(sch.shock);
    }
}

StepRecord step(World& world, const ScenarioConfig& config, int step_index) {
    if (step_index < 0 || step_index >= config.horizon) {
        throw std::invalid_argument("step: step_index outside the horizon");
    }
    const CompanyState before = world.company;

    StepRecord record;
    record.step = step_index;

    // Issuance target in shares at the prevailing price.
    const double price = world.company.share_price;
    const double scheduled = schedule_at(config.issuance, step_index);
    const double target_shares = config.issuance_kind == IssuanceKind::Shares
                                     ? scheduled
                                     : scheduled / price;

    // The constant-mNAV target is pinned by config or read off the world
    // before issuance moves the balance sheet.
    const double constant_mnav = config.mnav_value > 0.0
                                     ? config.mnav_value
                                     : mnav(world.company);

    // Loans and purchases, cash before credit, in investor index order.
    // Capacity is measured on the pre-purchase portfolio; the purchase
    // itself only adds collateral at this price.
    double remaining = target_shares;
    const double haircut = world.credit.haircut;
    for (InvestorState& investor : world.investors) {
        if (!(remaining > 0.0)) break;
        const double cost_full = remaining * price;
        const double portfolio = investor.shares_held * price;
        const double capacity =
            std::max(0.0, (1.0 - haircut) * portfolio - investor.debt);
        const double headroom =
            std::max(0.0, world.credit.exposure_limit - world.credit.exposure);
        const double borrowable = std::min(capacity, headroom);
        const double budget = investor.cash + borrowable;

        double bought;
        double cost;
        if (budget >= cost_full) {
            bought = remaining;
            cost = cost_full;
        } else {
            bought = budget / price;
            cost = bought * price;
            if (headroom < capacity) {
                record.events.loan_refused = true;
            }
        }
        if (!(bought > 0.0)) continue;

        const double from_cash = std::min(investor.cash, cost);
        const double loan = cost - from_cash;
        investor.cash -= from_cash;
        if (loan > 0.0) {
            investor.debt += loan;
            world.credit.exposure += loan;
            record.events.loan_granted = true;
        }
        investor.shares_held += bought;
        remaining -= bought;
    }
    if (remaining > 1e-12 * std::max(1.0, target_shares)) {
        record.events.infeasible = true;
    }
    const double absorbed = target_shares - remaining;

    // Proceeds convert to tokens at the current token price.
    if (absorbed > 0.0) {
        const double mcap_before = market_cap(world.company);
        const double proceeds = absorbed * price;
        const double tokens_bought = proceeds / world.company.token_price;
        world.company.tokens_held += tokens_bought;
        world.company.shares_outstanding += absorbed;
        if (config.mnav_model == MnavModel::Impact &&
            config.impact.token_coeff > 0.0) {
            const double flow = tokens_bought / config.impact.token_supply;
            world.company.token_price *=
                1.0 + config.impact.token_coeff *
                          flow_response(flow, config.impact.form);
        }

        // Reprice the stock. The constant model keeps a zero-issuance
        // world bitwise untouched, so it only reprices here.
        switch (config.mnav_model) {
            case MnavModel::Constant:
                world.company.share_price = constant_mnav * nav(world.company) /
                                            world.company.shares_outstanding;
                break;
            case MnavModel::Path:
                break;  // handled below, issuance or not
            case MnavModel::Impact: {
                const double flow = proceeds / mcap_before;
                world.company.share_price *=
                    1.0 + config.impact.share_coeff *
                              flow_response(flow, config.impact.form);
                break;
            }
        }
    }
    if (config.mnav_model == MnavModel::Path) {
        world.company.share_price =
            config.mnav_path[static_cast<std::size_t>(step_index)] *
            nav(world.company) / world.company.shares_outstanding;
    }

    // Collateral re-check at the post-reprice price.
    for (const InvestorState& investor : world.investors) {
        if (collateral_violated(investor, world.credit.haircut,
                                world.company.share_price)) {
            record.events.margin_call = true;
        }
    }

    record.company = world.company;
    record.investors = world.investors;
    record.credit = world.credit;
    record.kpis = kpis(before, world.company);
    record.investor_debt = 0.0;
    for (const InvestorState& investor : world.investors) {
        record.investor_debt += investor.debt;
    }
    return record;
}

RunResult run_with_reports(const ScenarioConfig& config) {
    validate(config);

    World world;
    world.company = config.company;
    world.investors = config.investors;
    world.credit.haircut = config.haircut.front();
    world.credit.exposure = 0.0;
    for (const InvestorState& investor : world.investors) {
        world.credit.exposure += investor.debt;
    }
    world.credit.exposure_limit = config.exposure_limit;

    const bool haircut_per_step =
        config.haircut.size() == static_cast<std::size_t>(config.horizon) &&
        config.haircut.size() != 1;

    RunResult result;
    result.records.reserve(static_cast<std::size_t>(config.horizon));
    for (int s = 0; s < config.horizon; ++s) {
        if (haircut_per_step) {
            world.credit.haircut = config.haircut[static_cast<std::size_t>(s)];
        }

        bool shock_margin_call = false;
        bool shock_liquidation = false;
        for (const ScheduledShock& scheduled : config.shocks) {
            if (scheduled.step != s) continue;
            std::optional<ImpactParams> impact;
            if (config.mnav_model == MnavModel::Impact) {
                impact = config.impact;
            }
            StressReport report = stress(world, scheduled.shock, impact);
            if (!report.converged) {
                throw std::runtime_error(
                    "run: liquidation cascade at step " + std::to_string(s) +
                    " did not converge");
            }
            for (const InvestorOutcome& outcome : report.investors) {
                shock_margin_call |= outcome.margin_called;
            }
            shock_liquidation |= report.total_shares_sold > 0.0;
            result.shocks.push_back({s, std::move(report)});
        }

        StepRecord record = step(world, config, s);
        record.events.margin_call |= shock_margin_call;
        record.events.liquidation |= shock_liquidation;
        result.records.push_back(std::move(record));
    }
    return result;
}

std::vector<StepRecord> run(const ScenarioConfig& config) {
    return run_with_reports(config).records;
}

StressReport stress(World& world, const Shock& shock,
                    const std::optional<ImpactParams>& impact, int max_rounds) {
    if (max_rounds < 1) {
        throw std::invalid_argument("stress: max_rounds must be >= 1");
    }
    require_legal_shock(shock);
    require_valid_company(world.company);

    StressReport report;
    report.shock = shock;
    report.share_price_before = world.company.share_price;
    report.exposure_before = world.credit.exposure;

    switch (shock.kind) {
        case ShockKind::HaircutRaise: {
            const double raised = world.credit.haircut + shock.magnitude;
            if (raised > 1.0 + 1e-12) {
                throw std::domain_error(
                    "HaircutRaise: resulting haircut " + std::to_string(raised) +
                    " exceeds 1");
            }
            world.credit.haircut = std::min(raised, 1.0);
            break;
        }
        case ShockKind::TokenPriceDrop:
            // The crash transmits to the stock at unchanged mNAV.
            world.company.token_price *= 1.0 - shock.magnitude;
            world.company.share_price *= 1.0 - shock.magnitude;
            break;
        case ShockKind::MnavCompression: {
            const double v = nav(world.company);
            if (!(v > 0.0)) {
                throw ZeroNavError();
            }
            world.company.share_price =
                shock.magnitude * v / world.company.shares_outstanding;
            break;
        }
    }

    report.investors.resize(world.investors.size());
    for (std::size_t i = 0; i < world.investors.size(); ++i) {
        report.investors[i].investor = static_cast<int>(i);
        report.investors[i].debt_before = world.investors[i].debt;
    }

    bool converged = false;
    for (int round = 0; round < max_rounds; ++round) {
        const double price = world.company.share_price;
        const double haircut = world.credit.haircut;
        const double shares_outstanding = world.company.shares_outstanding;
        double sold_this_round = 0.0;

        for (std::size_t i = 0; i < world.investors.size(); ++i) {
            InvestorState& investor = world.investors[i];
            if (!collateral_violated(investor, haircut, price)) continue;
            InvestorOutcome& outcome = report.investors[i];
            outcome.margin_called = true;

            // Minimal sale restoring debt <= (1-h)*(shares-s)*price;
            // with zero haircut no finite sale helps, so everything goes.
            const double cap = (1.0 - haircut) * investor.shares_held * price;
            double sell = investor.shares_held;
            if (haircut > 0.0) {
                sell = std::min(investor.shares_held,
                                (investor.debt - cap) / (haircut * price));
            }
            const double proceeds = sell * price;
            const double repaid = std::min(proceeds, investor.debt);
            investor.shares_held -= sell;
            investor.debt -= repaid;
            investor.cash += proceeds - repaid;
            world.credit.exposure -= repaid;

            outcome.shares_sold += sell;
            outcome.proceeds += proceeds;
            report.total_proceeds += proceeds;
            sold_this_round += sell;

            if (investor.shares_held <= 0.0 && investor.debt > 0.0) {
                // Collateral exhausted; the remainder is uncollectible.
                outcome.loss += investor.debt;
                report.credit_loss += investor.debt;
                world.credit.exposure -= investor.debt;
                investor.debt = 0.0;
            }
        }

        if (!(sold_this_round > 0.0)) {
            converged = true;
            break;
        }
        report.rounds += 1;
        report.total_shares_sold += sold_this_round;

        if (impact && impact->share_coeff > 0.0) {
            const double flow = sold_this_round / shares_outstanding;
            const double factor =
                1.0 - impact->share_coeff * flow_response(flow, impact->form);
            world.company.share_price *= std::max(1e-9, factor);
        }
    }

    for (std::size_t i = 0; i < world.investors.size(); ++i) {
        report.investors[i].debt_after = world.investors[i].debt;
    }
    report.converged = converged;
    report.share_price_after = world.company.share_price;
    report.exposure_after = world.credit.exposure;
    return report;
}

}  // namespace betwheel::flywheel
