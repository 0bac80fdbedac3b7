// Command-line front end: policy runs, published-table reproduction,
// sensitivity sweeps, the exact-equilibrium oracle, price regressions, and
// profit context figures.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oilmkt/equilibrium.hpp"
#include "oilmkt/model.hpp"
#include "oilmkt/regression.hpp"
#include "oilmkt/report.hpp"
#include "oilmkt/scenarios.hpp"
#include "oilmkt/sensitivity.hpp"

namespace {

using nlohmann::json;
using namespace oilmkt;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_model = 3;

struct CommonOpts {
    std::string horizon = "sr";
    std::string cost_model = "additive";
    std::string params_file;
    std::string format = "table";
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_horizon = true) {
    if (with_horizon)
        cmd->add_option("--horizon", o.horizon, "Time horizon")
            ->check(CLI::IsMember({"vsr", "sr", "lr"}));
    cmd->add_option("--cost-model", o.cost_model, "Cost model")
        ->check(CLI::IsMember({"additive", "proportional"}));
    cmd->add_option("--params", o.params_file, "Parameter file (flat JSON) overriding the baseline");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--out", o.out_dir, "Output directory for CSV files");
}

CostModel parse_cost_model(const std::string& s) {
    return s == "proportional" ? CostModel::proportional : CostModel::additive;
}

// Baseline for the selected horizon/cost model, overridden by --params if
// given (the file's embedded horizon/cost_model win when present).
std::pair<ModelParams, Horizon> resolve_params(const CommonOpts& o) {
    if (!o.params_file.empty()) {
        std::ifstream in(o.params_file);
        if (!in) throw std::invalid_argument("cannot open params file '" + o.params_file + "'");
        json j = json::parse(in);
        if (!j.contains("horizon")) j["horizon"] = to_string(report::horizon_from_string(o.horizon));
        if (!j.contains("cost_model")) j["cost_model"] = o.cost_model;
        return report::params_from_json(j);
    }
    Horizon h = report::horizon_from_string(o.horizon);
    return {scenarios::baseline(h, parse_cost_model(o.cost_model)), h};
}

void emit_table(const report::Table& t, const CommonOpts& o) {
    if (o.format == "json") {
        std::cout << report::to_json(t).dump(2) << "\n";
    } else if (o.format == "csv") {
        if (o.out_dir.empty()) {
            report::render_csv(t, std::cout);
        } else {
            std::string path = o.out_dir + "/" + t.name + ".csv";
            std::ofstream out(path);
            if (!out) throw std::invalid_argument("cannot write '" + path + "'");
            report::render_csv(t, out);
            std::cout << "wrote " << path << "\n";
        }
    } else {
        report::render_text(t, std::cout);
    }
}

int cmd_run(const CommonOpts& o, const std::string& policy, double cut_cents,
            const std::optional<double>& transfer, const std::string& dump_params) {
    auto [m, h] = resolve_params(o);
    if (!dump_params.empty()) {
        std::ofstream out(dump_params);
        if (!out) throw std::invalid_argument("cannot write '" + dump_params + "'");
        out << report::params_to_json(m, h).dump(2) << "\n";
    }
    bool yearly = (h != Horizon::very_short_run);
    PolicyResponse r;
    if (policy == "tax-cut") {
        r = evaluate_tax_cut(m, cut_cents, yearly);
    } else {
        double amount = transfer ? *transfer : -evaluate_tax_cut(m, cut_cents, false).d_fiscal_eu;
        r = evaluate_transfer(m, amount, yearly);
    }
    report::Table t;
    t.name = policy;
    t.columns = report::policy_columns();
    t.rows.push_back(report::policy_row(h, r));
    emit_table(t, o);
    return exit_ok;
}

int cmd_tables(const CommonOpts& o) {
    std::vector<report::Table> tables = {
        report::table_tax_cut(), report::table_transfer(), report::table_sweep(),
        report::table_proportional_tax_cut(), report::table_proportional_transfer()};
    if (o.format == "json") {
        json all = json::array();
        for (const auto& t : tables) all.push_back(report::to_json(t));
        std::cout << all.dump(2) << "\n";
    } else {
        for (const auto& t : tables) {
            emit_table(t, o);
            if (o.format == "table") std::cout << "\n";
        }
    }
    return exit_ok;
}

int cmd_sweep(const CommonOpts& o, double cut_cents, bool full_grid) {
    Horizon h = report::horizon_from_string(o.horizon);
    CostModel cm = parse_cost_model(o.cost_model);
    double v_eu = scenarios::baseline(h, cm).v_eu;
    PolicyShock shock = PolicyShock::duty(-(cut_cents / 100.0) / (1.0 + v_eu));
    sensitivity::SweepSummary s = sensitivity::sweep(h, shock, cm);

    report::Table t;
    t.name = std::string("sweep_") + to_string(h);
    t.columns = {"Oil price change c/l", "EU fuel price change c/l", "Fiscal cost EU MEUR/day",
                 "Profit gain Russia MEUR/day"};
    auto emit = [&](const std::string& label, double dp, double df, double fisc, double prof) {
        report::TableRow row;
        row.label = label;
        row.values = {100.0 * dp, 100.0 * df, -fisc, prof};
        t.rows.push_back(std::move(row));
    };
    if (full_grid || o.format == "csv") {
        for (const auto& row : s.rows)
            emit(row.label, row.response.d_oil_price, row.response.d_fuel_price_eu,
                 row.response.d_fiscal_eu, row.response.d_profit_ru);
        emit("base case", s.base.d_oil_price, s.base.d_fuel_price_eu, s.base.d_fiscal_eu,
             s.base.d_profit_ru);
    } else {
        emit("minimum", s.oil_price.min, s.fuel_price.min, s.fiscal.min, s.profit.min);
        emit("base case", s.oil_price.base, s.fuel_price.base, s.fiscal.base, s.profit.base);
        emit("maximum", s.oil_price.max, s.fuel_price.max, s.fiscal.max, s.profit.max);
    }
    emit_table(t, o);
    return exit_ok;
}

int cmd_oracle(const CommonOpts& o, const std::string& policy, double cut_cents,
               const std::optional<double>& transfer) {
    auto [m, h] = resolve_params(o);
    bool yearly = (h != Horizon::very_short_run);
    PolicyShock shock = policy == "transfer"
        ? PolicyShock::transfer(transfer ? *transfer
                                         : -evaluate_tax_cut(m, cut_cents, false).d_fiscal_eu)
        : PolicyShock::duty(-(cut_cents / 100.0) / (1.0 + m.v_eu));
    report::OracleComparison cmp = report::compare_linear_exact(m, shock, yearly);
    if (o.format == "json") {
        std::cout << report::to_json(cmp).dump(2) << "\n";
        return exit_ok;
    }
    auto line = [](const std::string& label, double lin, double exact, double gap) {
        std::cout << std::left << std::setw(26) << label << std::right << std::setw(16) << lin
                  << std::setw(16) << exact << std::setw(14) << gap << "\n";
    };
    std::cout << "horizon " << to_string(h) << "  (" << cmp.iterations
              << " solver iterations, residual " << cmp.residual_rel << " relative)\n";
    std::cout << std::left << std::setw(26) << "" << std::right << std::setw(16) << "linear"
              << std::setw(16) << "exact" << std::setw(14) << "rel gap" << "\n";
    line("oil price change EUR/l", cmp.linear.d_oil_price, cmp.exact.d_oil_price,
         cmp.gap_oil_price);
    line("profit change MEUR/day", cmp.linear.d_profit_ru, cmp.exact.d_profit_ru, cmp.gap_profit);
    line("fiscal change MEUR/day", cmp.linear.d_fiscal_eu, cmp.exact.d_fiscal_eu, cmp.gap_fiscal);
    if (policy != "transfer") {
        std::cout << "gap ladder (duty cents -> relative oil-price gap):\n";
        for (double cents : {16.666666666666668, 8.333333333333334, 4.166666666666667,
                             2.0833333333333335}) {
            PolicyShock s = PolicyShock::duty(-cents / 100.0);
            report::OracleComparison c = report::compare_linear_exact(m, s, false);
            std::cout << "  " << std::setw(8) << cents << "  " << c.gap_oil_price << "\n";
        }
    }
    return exit_ok;
}

int cmd_context(double profit, const CommonOpts& o) {
    scenarios::ContextSummary s = scenarios::context_report(profit);
    if (o.format == "json") {
        json j;
        j["profit_meur_day"] = s.profit;
        j["gdp_share"] = s.gdp_share;
        j["military_share"] = s.military_share;
        j["soldier_salaries"] = s.soldiers;
        j["police_salaries"] = s.police;
        j["troll_salaries"] = s.trolls;
        j["mlrs_units"] = s.mlrs;
        j["tank_upgrades"] = s.tanks;
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "one day of " << s.profit << " MEUR additional profit buys:\n"
              << "  " << s.soldiers << " contract-soldier yearly salaries\n"
              << "  " << s.police << " policeman yearly salaries\n"
              << "  " << s.trolls << " disinformation-worker yearly salaries\n"
              << "  " << s.mlrs << " rocket-artillery vehicles\n"
              << "  " << s.tanks << " tank modernizations\n"
              << "share of daily GDP: " << 100.0 * s.gdp_share << "%\n"
              << "share of daily military spending: " << 100.0 * s.military_share << "%\n";
    return exit_ok;
}

int cmd_regress(const std::string& csv_path, const std::string& split, const CommonOpts& o) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("cannot open '" + csv_path + "'");
    regression::PriceSeries series = regression::PriceSeries::from_csv(in);
    regression::UralsBrentReport rep = regression::urals_brent_analysis(series, split);

    auto fit_json = [](const regression::OlsFit& f) {
        json j;
        j["slope"] = f.slope;
        j["se_slope"] = f.se_slope;
        j["p_slope"] = f.p_slope;
        j["stars_slope"] = f.stars_slope();
        j["intercept"] = f.intercept;
        j["se_intercept"] = f.se_intercept;
        j["p_intercept"] = f.p_intercept;
        j["stars_intercept"] = f.stars_intercept();
        j["n"] = f.n;
        return j;
    };
    if (o.format == "json") {
        json j;
        j["split_date"] = rep.split_date;
        j["levels_pre"] = fit_json(rep.levels_pre);
        j["fd_pre"] = fit_json(rep.fd_pre);
        j["levels_post"] = fit_json(rep.levels_post);
        j["fd_post"] = fit_json(rep.fd_post);
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    auto show = [](const std::string& label, const regression::OlsFit& f) {
        std::cout << std::left << std::setw(22) << label << "slope " << f.slope << f.stars_slope()
                  << " (" << f.se_slope << ")  constant " << f.intercept << f.stars_intercept()
                  << " (" << f.se_intercept << ")  n=" << f.n << "\n";
    };
    std::cout << "Brent regressed on Urals, split at " << rep.split_date << "\n";
    show("(1) pre, levels", rep.levels_pre);
    show("(2) pre, first diff", rep.fd_pre);
    show("(3) post, levels", rep.levels_post);
    show("(4) post, first diff", rep.fd_post);
    std::cout << "note: * p<0.1, ** p<0.05, *** p<0.001\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oil-market incidence of EU fuel-tax cuts and cash transfers"};
    app.require_subcommand(1);

    CommonOpts run_o, tables_o, sweep_o, oracle_o, context_o, regress_o;
    std::string run_policy = "tax-cut", oracle_policy = "tax-cut";
    double run_cut = 20.0, sweep_cut = 20.0, oracle_cut = 20.0;
    std::optional<double> run_transfer, oracle_transfer;
    std::string dump_params;
    bool sweep_full = false;
    double context_profit = 0.0;
    std::string regress_csv, regress_split = "2022-02-24";

    CLI::App* run = app.add_subcommand("run", "Evaluate one policy at one horizon");
    add_common(run, run_o);
    run->add_option("--policy", run_policy)->check(CLI::IsMember({"tax-cut", "transfer"}));
    run->add_option("--cut-cents", run_cut, "Consumer-visible cut, euro cents incl. VAT");
    run->add_option("--transfer", run_transfer, "Transfer MEUR/day (default: fiscal equivalent)");
    run->add_option("--dump-params", dump_params, "Write the resolved parameters to FILE");

    CLI::App* tables = app.add_subcommand("tables", "Reproduce all published result tables");
    add_common(tables, tables_o, false);

    CLI::App* sweep = app.add_subcommand("sweep", "Sensitivity sweep over the bound grid");
    add_common(sweep, sweep_o);
    sweep->add_option("--cut-cents", sweep_cut);
    sweep->add_flag("--grid", sweep_full, "Emit all 32 grid rows instead of the envelope");

    CLI::App* oracle = app.add_subcommand("oracle", "Linear model vs exact equilibrium solve");
    add_common(oracle, oracle_o);
    oracle->add_option("--policy", oracle_policy)->check(CLI::IsMember({"tax-cut", "transfer"}));
    oracle->add_option("--cut-cents", oracle_cut);
    oracle->add_option("--transfer", oracle_transfer);

    CLI::App* context = app.add_subcommand("context", "Size a daily profit gain");
    add_common(context, context_o, false);
    context->add_option("--profit", context_profit, "Profit gain, MEUR/day")->required();

    CLI::App* regress = app.add_subcommand("regress", "Brent/Urals OLS, levels and differences");
    add_common(regress, regress_o, false);
    regress->add_option("--csv", regress_csv, "Input CSV (header date,brent,urals)")->required();
    regress->add_option("--split", regress_split, "First date of the post window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (run->parsed()) return cmd_run(run_o, run_policy, run_cut, run_transfer, dump_params);
        if (tables->parsed()) return cmd_tables(tables_o);
        if (sweep->parsed()) return cmd_sweep(sweep_o, sweep_cut, sweep_full);
        if (oracle->parsed()) return cmd_oracle(oracle_o, oracle_policy, oracle_cut,
                                                oracle_transfer);
        if (context->parsed()) return cmd_context(context_profit, context_o);
        if (regress->parsed()) return cmd_regress(regress_csv, regress_split, regress_o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_model;
    }
    return exit_ok;
}
