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

#include "betwheel/scenario_io.hpp"

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace betwheel::scenario_io {

namespace {

using nlohmann::json;

// Line and column of a byte offset, for parse diagnostics.
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return std::to_string(line) + ":" + std::to_string(column);
}

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw ConfigError(origin + ": " + message);
}

const json& require_key(const json& object, const std::string& path,
                        const std::string& key, const std::string& origin) {
    const auto it = object.find(key);
    if (it == object.end()) {
        fail(origin, path + ": missing required key \"" + key + "\"");
    }
    return *it;
}

double require_number(const json& value, const std::string& path,
                      const std::string& origin) {
    if (!value.is_number()) {
        fail(origin, path + ": expected a number, got " +
                         std::string(value.type_name()));
    }
    return value.get<double>();
}

int require_int(const json& value, const std::string& path,
                const std::string& origin) {
    if (!value.is_number_integer()) {
        fail(origin, path + ": expected an integer, got " +
                         std::string(value.type_name()));
    }
    return value.get<int>();
}

std::string require_string(const json& value, const std::string& path,
                           const std::string& origin) {
    if (!value.is_string()) {
        fail(origin, path + ": expected a string, got " +
                         std::string(value.type_name()));
    }
    return value.get<std::string>();
}

const json& require_object(const json& value, const std::string& path,
                           const std::string& origin) {
    if (!value.is_object()) {
        fail(origin, path + ": expected an object, got " +
                         std::string(value.type_name()));
    }
    return value;
}

const json& require_array(const json& value, const std::string& path,
                          const std::string& origin) {
    if (!value.is_array()) {
        fail(origin, path + ": expected an array, got " +
                         std::string(value.type_name()));
    }
    return value;
}

void reject_unknown(const json& object, const std::string& path,
                    std::initializer_list<const char*> allowed,
                    const std::string& origin) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (key == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(origin, path + ": unknown key \"" + key + "\"");
        }
    }
}

// A schedule is either a single number or an array of numbers.
std::vector<double> parse_schedule(const json& value, const std::string& path,
                                   const std::string& origin) {
    std::vector<double> schedule;
    if (value.is_number()) {
        schedule.push_back(value.get<double>());
        return schedule;
    }
    const json& array = require_array(value, path, origin);
    schedule.reserve(array.size());
    for (std::size_t i = 0; i < array.size(); ++i) {
        schedule.push_back(require_number(
            array[i], path + "[" + std::to_string(i) + "]", origin));
    }
    return schedule;
}

flywheel::CompanyState parse_company(const json& value, const std::string& origin) {
    const json& object = require_object(value, "company", origin);
    reject_unknown(object, "company",
                   {"shares_outstanding", "tokens_held", "token_price",
                    "share_price"},
                   origin);
    flywheel::CompanyState company{};
    company.shares_outstanding = require_number(
        require_key(object, "company", "shares_outstanding", origin),
        "company.shares_outstanding", origin);
    company.tokens_held =
        require_number(require_key(object, "company", "tokens_held", origin),
                       "company.tokens_held", origin);
    company.token_price =
        require_number(require_key(object, "company", "token_price", origin),
                       "company.token_price", origin);
    company.share_price =
        require_number(require_key(object, "company", "share_price", origin),
                       "company.share_price", origin);
    return company;
}

std::vector<flywheel::InvestorState> parse_investors(const json& value,
                                                     const std::string& origin) {
    const json& array = require_array(value, "investors", origin);
    std::vector<flywheel::InvestorState> investors;
    investors.reserve(array.size());
    for (std::size_t i = 0; i < array.size(); ++i) {
        const std::string path = "investors[" + std::to_string(i) + "]";
        const json& object = require_object(array[i], path, origin);
        reject_unknown(object, path, {"shares_held", "cash", "debt"}, origin);
        flywheel::InvestorState investor{};
        investor.shares_held =
            require_number(require_key(object, path, "shares_held", origin),
                           path + ".shares_held", origin);
        investor.cash = require_number(require_key(object, path, "cash", origin),
                                       path + ".cash", origin);
        investor.debt = require_number(require_key(object, path, "debt", origin),
                                       path + ".debt", origin);
        investors.push_back(investor);
    }
    return investors;
}

void parse_issuance(const json& value, flywheel::ScenarioConfig& config,
                    const std::string& origin) {
    const json& object = require_object(value, "issuance", origin);
    reject_unknown(object, "issuance", {"kind", "schedule"}, origin);
    if (const auto it = object.find("kind"); it != object.end()) {
        const std::string kind = require_string(*it, "issuance.kind", origin);
        if (kind == "shares") {
            config.issuance_kind = flywheel::IssuanceKind::Shares;
        } else if (kind == "proceeds") {
            config.issuance_kind = flywheel::IssuanceKind::Proceeds;
        } else {
            fail(origin, "issuance.kind: expected \"shares\" or \"proceeds\", "
                         "got \"" + kind + "\"");
        }
    }
    config.issuance =
        parse_schedule(require_key(object, "issuance", "schedule", origin),
                       "issuance.schedule", origin);
}

void parse_mnav(const json& value, flywheel::ScenarioConfig& config,
                const std::string& origin) {
    const json& object = require_object(value, "mnav", origin);
    reject_unknown(object, "mnav",
                   {"model", "value", "path", "share_coeff", "token_coeff",
                    "token_supply", "form"},
                   origin);
    const std::string model =
        require_string(require_key(object, "mnav", "model", origin),
                       "mnav.model", origin);
    if (model == "constant") {
        config.mnav_model = flywheel::MnavModel::Constant;
        if (const auto it = object.find("value"); it != object.end()) {
            config.mnav_value = require_number(*it, "mnav.value", origin);
        }
    } else if (model == "path") {
        config.mnav_model = flywheel::MnavModel::Path;
        const json& path = require_array(
            require_key(object, "mnav", "path", origin), "mnav.path", origin);
        config.mnav_path.reserve(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) {
            config.mnav_path.push_back(require_number(
                path[i], "mnav.path[" + std::to_string(i) + "]", origin));
        }
    } else if (model == "impact") {
        config.mnav_model = flywheel::MnavModel::Impact;
        if (const auto it = object.find("share_coeff"); it != object.end()) {
            config.impact.share_coeff =
                require_number(*it, "mnav.share_coeff", origin);
        }
        if (const auto it = object.find("token_coeff"); it != object.end()) {
            config.impact.token_coeff =
                require_number(*it, "mnav.token_coeff", origin);
        }
        if (const auto it = object.find("token_supply"); it != object.end()) {
            config.impact.token_supply =
                require_number(*it, "mnav.token_supply", origin);
        }
        if (const auto it = object.find("form"); it != object.end()) {
            const std::string form = require_string(*it, "mnav.form", origin);
            if (form == "linear") {
                config.impact.form = flywheel::ImpactForm::Linear;
            } else if (form == "sqrt") {
                config.impact.form = flywheel::ImpactForm::Sqrt;
            } else {
                fail(origin, "mnav.form: expected \"linear\" or \"sqrt\", got \"" +
                                 form + "\"");
            }
        }
    } else {
        fail(origin, "mnav.model: expected \"constant\", \"path\" or "
                     "\"impact\", got \"" + model + "\"");
    }
}

std::vector<flywheel::ScheduledShock> parse_shocks(const json& value,
                                                   const std::string& origin) {
    const json& array = require_array(value, "shocks", origin);
    std::vector<flywheel::ScheduledShock> shocks;
    shocks.reserve(array.size());
    for (std::size_t i = 0; i < array.size(); ++i) {
        const std::string path = "shocks[" + std::to_string(i) + "]";
        const json& object = require_object(array[i], path, origin);
        reject_unknown(object, path, {"step", "kind", "magnitude"}, origin);
        flywheel::ScheduledShock shock{};
        shock.step = require_int(require_key(object, path, "step", origin),
                                 path + ".step", origin);
        const std::string kind =
            require_string(require_key(object, path, "kind", origin),
                           path + ".kind", origin);
        if (kind == "haircut_raise") {
            shock.shock.kind = flywheel::ShockKind::HaircutRaise;
        } else if (kind == "token_price_drop") {
            shock.shock.kind = flywheel::ShockKind::TokenPriceDrop;
        } else if (kind == "mnav_compression") {
            shock.shock.kind = flywheel::ShockKind::MnavCompression;
        } else {
            fail(origin, path + ".kind: expected \"haircut_raise\", "
                                "\"token_price_drop\" or \"mnav_compression\", "
                                "got \"" + kind + "\"");
        }
        shock.shock.magnitude =
            require_number(require_key(object, path, "magnitude", origin),
                           path + ".magnitude", origin);
        shocks.push_back(shock);
    }
    return shocks;
}

const char* shock_kind_name(flywheel::ShockKind kind) {
    switch (kind) {
        case flywheel::ShockKind::HaircutRaise:
            return "haircut_raise";
        case flywheel::ShockKind::TokenPriceDrop:
            return "token_price_drop";
        case flywheel::ShockKind::MnavCompression:
            return "mnav_compression";
    }
    return "unknown";
}

std::string event_flags(const flywheel::StepEvents& events) {
    std::string flags;
    const auto append = [&flags](bool set, const char* name) {
        if (!set) return;
        if (!flags.empty()) flags += '|';
        flags += name;
    };
    append(events.loan_granted, "loan_granted");
    append(events.loan_refused, "loan_refused");
    append(events.margin_call, "margin_call");
    append(events.liquidation, "liquidation");
    append(events.infeasible, "infeasible");
    return flags;
}

}  // namespace

flywheel::ScenarioConfig parse_scenario(const std::string& text,
                                        const std::string& origin) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& error) {
        fail(origin, "JSON syntax error at " + locate(text, error.byte) + ": " +
                         error.what());
    }
    const json& root = require_object(document, "(document)", origin);
    reject_unknown(root, "(document)",
                   {"company", "investors", "horizon", "issuance", "haircut",
                    "exposure_limit", "mnav", "shocks"},
                   origin);

    flywheel::ScenarioConfig config;
    config.company =
        parse_company(require_key(root, "(document)", "company", origin), origin);
    if (const auto it = root.find("investors"); it != root.end()) {
        config.investors = parse_investors(*it, origin);
    }
    config.horizon =
        require_int(require_key(root, "(document)", "horizon", origin),
                    "horizon", origin);
    parse_issuance(require_key(root, "(document)", "issuance", origin), config,
                   origin);
    config.haircut =
        parse_schedule(require_key(root, "(document)", "haircut", origin),
                       "haircut", origin);
    config.exposure_limit = require_number(
        require_key(root, "(document)", "exposure_limit", origin),
        "exposure_limit", origin);
    if (const auto it = root.find("mnav"); it != root.end()) {
        parse_mnav(*it, config, origin);
    }
    if (const auto it = root.find("shocks"); it != root.end()) {
        config.shocks = parse_shocks(*it, origin);
    }

    try {
        flywheel::validate(config);
    } catch (const std::invalid_argument& error) {
        fail(origin, error.what());
    }
    return config;
}

flywheel::ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError(path + ": cannot open file");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_scenario(buffer.str(), path);
}

std::string format_double(double value) {
    char buffer[32];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string to_csv(const std::vector<flywheel::StepRecord>& records) {
    std::string out =
        "step,shares,tokens,token_price,share_price,mnav,btc_per_share,"
        "btc_yield,btc_gain,btc_dollar_gain,investor_debt,credit_exposure,"
        "event_flags\n";
    for (const flywheel::StepRecord& record : records) {
        out += std::to_string(record.step);
        out += ',';
        out += format_double(record.company.shares_outstanding);
        out += ',';
        out += format_double(record.company.tokens_held);
        out += ',';
        out += format_double(record.company.token_price);
        out += ',';
        out += format_double(record.company.share_price);
        out += ',';
        out += format_double(record.kpis.mnav);
        out += ',';
        out += format_double(record.kpis.btc_per_share);
        out += ',';
        out += format_double(record.kpis.btc_yield);
        out += ',';
        out += format_double(record.kpis.btc_gain);
        out += ',';
        out += format_double(record.kpis.btc_dollar_gain);
        out += ',';
        out += format_double(record.investor_debt);
        out += ',';
        out += format_double(record.credit.exposure);
        out += ',';
        out += event_flags(record.events);
        out += '\n';
    }
    return out;
}

std::string stress_to_csv(
    const std::vector<flywheel::RunResult::ShockOutcome>& shocks) {
    std::string out =
        "step,kind,magnitude,margin_calls,shares_sold,proceeds,credit_loss,"
        "exposure_before,exposure_after,rounds,converged\n";
    for (const flywheel::RunResult::ShockOutcome& outcome : shocks) {
        const flywheel::StressReport& report = outcome.report;
        int margin_calls = 0;
        for (const flywheel::InvestorOutcome& investor : report.investors) {
            margin_calls += investor.margin_called ? 1 : 0;
        }
        out += std::to_string(outcome.step);
        out += ',';
        out += shock_kind_name(report.shock.kind);
        out += ',';
        out += format_double(report.shock.magnitude);
        out += ',';
        out += std::to_string(margin_calls);
        out += ',';
        out += format_double(report.total_shares_sold);
        out += ',';
        out += format_double(report.total_proceeds);
        out += ',';
        out += format_double(report.credit_loss);
        out += ',';
        out += format_double(report.exposure_before);
        out += ',';
        out += format_double(report.exposure_after);
        out += ',';
        out += std::to_string(report.rounds);
        out += ',';
        out += report.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

}  // namespace betwheel::scenario_io
