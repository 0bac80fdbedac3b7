#pragma once

#include <limits>
#include <vector>

#include "oilmkt/model.hpp"
#include "oilmkt/scenarios.hpp"

namespace oilmkt::sensitivity {

struct SweepRow {
    std::array<bool, 5> high{};
    std::string label;
    PolicyResponse response;
};

// Signed envelope of one output column over {32 corners + base}. argmin/argmax
// index into the rows, -1 meaning the base case.
struct ColumnEnvelope {
    double min = std::numeric_limits<double>::infinity();
    double base = 0.0;
    double max = -std::numeric_limits<double>::infinity();
    int argmin = -1, argmax = -1;
};

struct SweepSummary {
    Horizon horizon{};
    CostModel cost_model{};
    PolicyResponse base;
    std::vector<SweepRow> rows;
    ColumnEnvelope oil_price, fuel_price, fiscal, profit;
};

namespace detail {
inline void fold(ColumnEnvelope& env, double value, int row) {
    if (value < env.min) {
        env.min = value;
        env.argmin = row;
    }
    if (value > env.max) {
        env.max = value;
        env.argmax = row;
    }
}
}  // namespace detail

// Evaluates the policy on every corner of the Table-6 grid plus the base case
// and takes signed per-column extrema. Row order matches sensitivity_grid.
inline SweepSummary sweep(Horizon h, const PolicyShock& shock,
                          CostModel cm = CostModel::additive) {
    SweepSummary out;
    out.horizon = h;
    out.cost_model = cm;
    bool yearly = (h != Horizon::very_short_run);
    out.base = evaluate(scenarios::baseline(h, cm), shock, yearly);

    std::vector<scenarios::GridEntry> grid = scenarios::sensitivity_grid(h, cm);
    out.rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow row;
        row.high = grid[i].high;
        row.label = grid[i].label();
        row.response = evaluate(grid[i].params, shock, yearly);
        out.rows.push_back(std::move(row));
        int idx = static_cast<int>(i);
        const PolicyResponse& r = out.rows.back().response;
        detail::fold(out.oil_price, r.d_oil_price, idx);
        detail::fold(out.fuel_price, r.d_fuel_price_eu, idx);
        detail::fold(out.fiscal, r.d_fiscal_eu, idx);
        detail::fold(out.profit, r.d_profit_ru, idx);
    }
    out.oil_price.base = out.base.d_oil_price;
    out.fuel_price.base = out.base.d_fuel_price_eu;
    out.fiscal.base = out.base.d_fiscal_eu;
    out.profit.base = out.base.d_profit_ru;
    detail::fold(out.oil_price, out.base.d_oil_price, -1);
    detail::fold(out.fuel_price, out.base.d_fuel_price_eu, -1);
    detail::fold(out.fiscal, out.base.d_fiscal_eu, -1);
    detail::fold(out.profit, out.base.d_profit_ru, -1);
    return out;
}

struct ProportionalRun {
    PolicyResponse tax_cut;
    PolicyResponse transfer;
    double transfer_amount = 0.0;  // MEUR/d, the tax cut's fiscal cost
};

// The 20-cent cut and its fiscally equivalent transfer under the proportional
// cost model; the transfer is tied to the fiscal cost computed under the same
// cost model.
inline ProportionalRun proportional_run(Horizon h, double cut_cents = 20.0) {
    ModelParams m = scenarios::baseline(h, CostModel::proportional);
    bool yearly = (h != Horizon::very_short_run);
    ProportionalRun run;
    run.tax_cut = evaluate_tax_cut(m, cut_cents, yearly);
    run.transfer_amount = -run.tax_cut.d_fiscal_eu;
    run.transfer = evaluate_transfer(m, run.transfer_amount, yearly);
    return run;
}

}  // namespace oilmkt::sensitivity
