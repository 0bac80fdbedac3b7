#pragma once

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oilmkt/equilibrium.hpp"
#include "oilmkt/model.hpp"
#include "oilmkt/scenarios.hpp"
#include "oilmkt/sensitivity.hpp"

namespace oilmkt::report {

using json = nlohmann::json;

// Round to `sig` significant figures; display-only, never applied upstream.
inline double round_sig(double v, int sig = 2) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    double mag = std::pow(10.0, sig - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
    return std::round(v * mag) / mag;
}

inline std::string format_sig(double v, int sig = 2) {
    double r = round_sig(v, sig);
    std::ostringstream os;
    os << std::setprecision(12) << r;
    return os.str();
}

inline std::string format_full(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// ------------------------------------------------------------------ tables

struct TableRow {
    std::string label;
    std::vector<std::optional<double>> values;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<TableRow> rows;
    std::vector<std::string> notes;
};

inline const char* horizon_label(Horizon h) {
    switch (h) {
        case Horizon::very_short_run: return "Very short run";
        case Horizon::short_run: return "Short run";
        case Horizon::long_run: return "Long run";
    }
    return "?";
}

inline constexpr std::array<Horizon, 3> all_horizons = {
    Horizon::very_short_run, Horizon::short_run, Horizon::long_run};

inline std::vector<std::string> policy_columns() {
    return {"Oil price change c/l", "EU fuel price change c/l", "Fiscal cost EU MEUR/day",
            "Profit gain Russia MEUR/day", "Profit gain Russia MEUR/year"};
}

inline TableRow policy_row(Horizon h, const PolicyResponse& r) {
    TableRow row;
    row.label = horizon_label(h);
    row.values = {100.0 * r.d_oil_price, 100.0 * r.d_fuel_price_eu, -r.d_fiscal_eu,
                  r.d_profit_ru,
                  r.d_profit_ru_yearly ? std::optional<double>(*r.d_profit_ru_yearly)
                                       : std::nullopt};
    return row;
}

// Effect of the 20-cent fuel tax cut, additive costs.
inline Table table_tax_cut(double cut_cents = 20.0) {
    Table t;
    t.name = "tax_cut";
    t.columns = policy_columns();
    for (Horizon h : all_horizons) {
        ModelParams m = scenarios::baseline(h);
        t.rows.push_back(policy_row(h, evaluate_tax_cut(m, cut_cents,
                                                        h != Horizon::very_short_run)));
    }
    return t;
}

// Fiscally equivalent cash transfer, additive costs, at the published
// per-horizon transfer amounts.
inline Table table_transfer() {
    Table t;
    t.name = "transfer";
    t.columns = policy_columns();
    for (Horizon h : all_horizons) {
        ModelParams m = scenarios::baseline(h);
        t.rows.push_back(policy_row(
            h, evaluate_transfer(m, scenarios::published_transfer(h),
                                 h != Horizon::very_short_run)));
    }
    return t;
}

// Sensitivity envelope rows (minimum / base case / maximum per column).
inline Table table_sweep(double cut_cents = 20.0) {
    Table t;
    t.name = "sweep";
    t.columns = {"Oil price change c/l", "EU fuel price change c/l", "Fiscal cost EU MEUR/day",
                 "Profit gain Russia MEUR/day"};
    for (Horizon h : all_horizons) {
        ModelParams base = scenarios::baseline(h);
        double delta_tau = -(cut_cents / 100.0) / (1.0 + base.v_eu);
        sensitivity::SweepSummary s = sensitivity::sweep(h, PolicyShock::duty(delta_tau));
        auto emit = [&](const char* which, double dp, double df, double fisc, double prof) {
            TableRow row;
            row.label = std::string(horizon_label(h)) + " " + which;
            row.values = {100.0 * dp, 100.0 * df, -fisc, prof};
            t.rows.push_back(std::move(row));
        };
        emit("minimum", s.oil_price.min, s.fuel_price.min, s.fiscal.min, s.profit.min);
        emit("base case", s.oil_price.base, s.fuel_price.base, s.fiscal.base, s.profit.base);
        emit("maximum", s.oil_price.max, s.fuel_price.max, s.fiscal.max, s.profit.max);
    }
    t.notes.push_back(
        "Short-run minimum oil price change is 0.38 c/l; the published table's 3.8 is a "
        "misplaced decimal point.");
    t.notes.push_back(
        "Long-run maximum row's fiscal cost is reported as a positive 97 MEUR/day; the "
        "published -97 carries a stray sign.");
    return t;
}

inline Table table_proportional_tax_cut(double cut_cents = 20.0) {
    Table t;
    t.name = "tax_cut_proportional";
    t.columns = policy_columns();
    for (Horizon h : all_horizons)
        t.rows.push_back(policy_row(h, sensitivity::proportional_run(h, cut_cents).tax_cut));
    return t;
}

inline Table table_proportional_transfer(double cut_cents = 20.0) {
    Table t;
    t.name = "transfer_proportional";
    t.columns = policy_columns();
    for (Horizon h : all_horizons)
        t.rows.push_back(policy_row(h, sensitivity::proportional_run(h, cut_cents).transfer));
    return t;
}

// -------------------------------------------------------------- rendering

inline void render_text(const Table& t, std::ostream& os, int sig = 2) {
    os << t.name << "\n";
    os << std::left << std::setw(24) << "";
    for (const std::string& col : t.columns) os << std::right << std::setw(30) << col;
    os << "\n";
    for (const TableRow& row : t.rows) {
        os << std::left << std::setw(24) << row.label;
        for (const auto& v : row.values)
            os << std::right << std::setw(30) << (v ? format_sig(*v, sig) : "-");
        os << "\n";
    }
    for (const std::string& note : t.notes) os << "note: " << note << "\n";
}

inline json to_json(const Table& t) {
    json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = json::array();
    for (const TableRow& row : t.rows) {
        json jr;
        jr["label"] = row.label;
        json vals = json::array();
        for (const auto& v : row.values)
            vals.push_back(v ? json(*v) : json(nullptr));
        jr["values"] = vals;
        jt["rows"].push_back(jr);
    }
    if (!t.notes.empty()) jt["notes"] = t.notes;
    return jt;
}

inline void render_csv(const Table& t, std::ostream& os) {
    os << "label";
    for (const std::string& col : t.columns) os << ',' << '"' << col << '"';
    os << "\n";
    for (const TableRow& row : t.rows) {
        os << '"' << row.label << '"';
        for (const auto& v : row.values) {
            os << ',';
            if (v) os << format_full(*v);
        }
        os << "\n";
    }
}

inline json to_json(const PolicyResponse& r) {
    json j;
    j["d_oil_price_eur_l"] = r.d_oil_price;
    j["d_fuel_price_eu_eur_l"] = r.d_fuel_price_eu;
    j["d_fiscal_eu_meur_day"] = r.d_fiscal_eu;
    j["d_profit_ru_meur_day"] = r.d_profit_ru;
    if (r.d_profit_ru_yearly)
        j["d_profit_ru_meur_year"] = *r.d_profit_ru_yearly;
    else
        j["d_profit_ru_meur_year"] = nullptr;
    return j;
}

// --------------------------------------------------------- parameter files

// Flat JSON object keyed by the parameter symbols, with embedded horizon and
// cost_model.
inline json params_to_json(const ModelParams& m, Horizon h) {
    json j;
    j["horizon"] = to_string(h);
    j["cost_model"] = m.cost_model == CostModel::additive ? "additive" : "proportional";
    j["eps_d_eu"] = m.eps_d_eu;
    j["eps_d_row"] = m.eps_d_row;
    j["eps_s_ru"] = m.eps_s_ru;
    j["eps_s_row"] = m.eps_s_row;
    j["eps_i_eu"] = m.eps_i_eu;
    j["p"] = m.p;
    j["tau"] = m.tau;
    j["c"] = m.c;
    j["z"] = m.z;
    j["v_eu"] = m.v_eu;
    j["e"] = m.e;
    j["x"] = m.x;
    j["y"] = m.y;
    j["s_ru"] = m.s_ru;
    j["d_eu"] = m.d_eu;
    if (m.income_eu) j["income_eu"] = *m.income_eu;
    return j;
}

inline Horizon horizon_from_string(const std::string& s) {
    if (s == "very_short_run" || s == "vsr") return Horizon::very_short_run;
    if (s == "short_run" || s == "sr") return Horizon::short_run;
    if (s == "long_run" || s == "lr") return Horizon::long_run;
    throw std::invalid_argument("unknown horizon '" + s + "'");
}

// Applies a parameter file on top of a baseline: the embedded horizon and
// cost_model pick the baseline, remaining keys override individual fields.
inline std::pair<ModelParams, Horizon> params_from_json(const json& j) {
    Horizon h = Horizon::short_run;
    if (j.contains("horizon")) h = horizon_from_string(j.at("horizon").get<std::string>());
    CostModel cm = CostModel::additive;
    if (j.contains("cost_model")) {
        std::string s = j.at("cost_model").get<std::string>();
        if (s == "additive")
            cm = CostModel::additive;
        else if (s == "proportional")
            cm = CostModel::proportional;
        else
            throw std::invalid_argument("unknown cost_model '" + s + "'");
    }
    ModelParams m = scenarios::baseline(h, cm);
    auto set = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    set("eps_d_eu", m.eps_d_eu);
    set("eps_d_row", m.eps_d_row);
    set("eps_s_ru", m.eps_s_ru);
    set("eps_s_row", m.eps_s_row);
    set("eps_i_eu", m.eps_i_eu);
    set("p", m.p);
    set("tau", m.tau);
    set("c", m.c);
    set("z", m.z);
    set("v_eu", m.v_eu);
    set("e", m.e);
    set("x", m.x);
    set("y", m.y);
    set("s_ru", m.s_ru);
    set("d_eu", m.d_eu);
    if (j.contains("income_eu")) {
        if (j.at("income_eu").is_null())
            m.income_eu.reset();
        else
            m.income_eu = j.at("income_eu").get<double>();
    }
    m.validate();
    return {m, h};
}

// ------------------------------------------------------ linear-vs-exact run

struct OracleComparison {
    PolicyResponse linear;
    PolicyResponse exact;
    double gap_oil_price = 0.0;  // relative
    double gap_profit = 0.0;
    double gap_fiscal = 0.0;
    int iterations = 0;
    double residual_rel = 0.0;
};

inline OracleComparison compare_linear_exact(const ModelParams& m, const PolicyShock& shock,
                                             bool with_yearly = true, double v_row = 0.0) {
    OracleComparison cmp;
    cmp.linear = evaluate(m, shock, with_yearly);
    IsoelasticMarket market = IsoelasticMarket::calibrate(m, v_row);
    cmp.exact = exact_policy_effects(market, shock, with_yearly);

    double tau1 = m.tau, income1 = m.income_eu.value_or(1.0);
    if (shock.kind == PolicyShock::Kind::duty_change)
        tau1 += shock.delta_tau;
    else
        income1 += shock.delta_income;
    EquilibriumSolution sol = solve_price(market, tau1, income1);
    cmp.iterations = sol.iterations;
    cmp.residual_rel = std::abs(sol.residual) / (sol.d_eu + sol.d_row);

    auto rel_gap = [](double lin, double exact) {
        if (exact == 0.0) return lin == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return std::abs(lin - exact) / std::abs(exact);
    };
    cmp.gap_oil_price = rel_gap(cmp.linear.d_oil_price, cmp.exact.d_oil_price);
    cmp.gap_profit = rel_gap(cmp.linear.d_profit_ru, cmp.exact.d_profit_ru);
    cmp.gap_fiscal = rel_gap(cmp.linear.d_fiscal_eu, cmp.exact.d_fiscal_eu);
    return cmp;
}

inline json to_json(const OracleComparison& c) {
    json j;
    j["linear"] = to_json(c.linear);
    j["exact"] = to_json(c.exact);
    j["gap_oil_price"] = c.gap_oil_price;
    j["gap_profit"] = c.gap_profit;
    j["gap_fiscal"] = c.gap_fiscal;
    j["iterations"] = c.iterations;
    j["residual_rel"] = c.residual_rel;
    return j;
}

}  // namespace oilmkt::report
