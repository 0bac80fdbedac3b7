#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "oilmkt/model.hpp"
#include "oilmkt/units.hpp"

namespace oilmkt {

enum class Horizon { very_short_run, short_run, long_run };

inline const char* to_string(Horizon h) {
    switch (h) {
        case Horizon::very_short_run: return "very_short_run";
        case Horizon::short_run: return "short_run";
        case Horizon::long_run: return "long_run";
    }
    return "?";
}

namespace scenarios {

// EU aggregate disposable income, MEUR/d. Reconstructed by back-solving the
// income response against the published transfer outcomes; overridable at the
// CLI.
inline constexpr double default_income_eu = 42000.0;

inline constexpr double base_oil_price = 0.58;        // EUR/l
inline constexpr double base_duty = 0.6;              // EUR/l
inline constexpr double base_other_cost = 0.48;       // EUR/l, additive
inline constexpr double proportional_cost_z = 0.83;   // proportional variant
inline constexpr double vat_eu = 0.2;
inline constexpr double extraction_cost = 17.0 / units::liters_per_barrel;  // EUR/l

struct BaselineQuantities {
    double s_ru_mbd, s_row_mbd, d_eu_mbd, d_row_mbd;
};

inline BaselineQuantities quantities(Horizon h) {
    switch (h) {
        case Horizon::very_short_run: return {2.595, 7.6, 4.8, 5.4};
        case Horizon::short_run: return {5.5, 92.0, 5.6, 91.9};
        case Horizon::long_run: return {8.0, 92.0, 5.7, 94.3};
    }
    throw std::logic_error("unknown horizon");
}

// x = d_eu/(d_eu+d_row), y = s_ru/(s_ru+s_row); totals must agree.
inline std::pair<double, double> derive_shares(double d_eu, double d_row, double s_ru,
                                               double s_row, double rel_tol = 1e-9) {
    double demand = d_eu + d_row;
    double supply = s_ru + s_row;
    if (!(demand > 0.0) || !(supply > 0.0))
        throw std::invalid_argument("derive_shares: totals must be positive");
    if (std::abs(demand - supply) > rel_tol * demand)
        throw std::invalid_argument("derive_shares: demand total " + std::to_string(demand) +
                                    " does not clear against supply total " +
                                    std::to_string(supply));
    return {d_eu / demand, s_ru / supply};
}

// Full parameterization for one horizon. x is primitive (5.7% globally; 47.5%
// in the EU-isolated case, printed as 48%); y follows from the supply
// quantities. Volumes are carried as Mb/d * 170, not the table's rounded Ml/d.
inline ModelParams baseline(Horizon h, CostModel cm = CostModel::additive) {
    ModelParams m;
    switch (h) {
        case Horizon::very_short_run:
            m.eps_d_eu = -0.25;
            m.eps_d_row = -0.125;
            m.eps_s_ru = 0.0;
            m.eps_s_row = 0.0;
            m.x = 0.475;
            break;
        case Horizon::short_run:
            m.eps_d_eu = -0.25;
            m.eps_d_row = -0.125;
            m.eps_s_ru = 0.0;
            m.eps_s_row = 0.0;
            m.x = 0.057;
            break;
        case Horizon::long_run:
            m.eps_d_eu = -0.9;
            m.eps_d_row = -0.45;
            m.eps_s_ru = 0.13;
            m.eps_s_row = 0.13;
            m.x = 0.057;
            break;
    }
    BaselineQuantities q = quantities(h);
    m.s_ru = units::barrels_to_liters(q.s_ru_mbd);
    m.d_eu = units::barrels_to_liters(q.d_eu_mbd);
    m.y = q.s_ru_mbd / (q.s_ru_mbd + q.s_row_mbd);
    m.eps_i_eu = 1.0;
    m.p = base_oil_price;
    m.tau = base_duty;
    m.c = base_other_cost;
    m.z = proportional_cost_z;
    m.v_eu = vat_eu;
    m.e = extraction_cost;
    m.income_eu = default_income_eu;
    m.cost_model = cm;
    return m;
}

// Lump-sum transfers tied to the published fiscal cost of the 20-cent cut.
inline double published_transfer(Horizon h) {
    switch (h) {
        case Horizon::very_short_run: return 140.0;
        case Horizon::short_run: return 170.0;
        case Horizon::long_run: return 115.0;
    }
    throw std::logic_error("unknown horizon");
}

// Sensitivity bounds per horizon: ε_D,EU low/high, the divisor that derives
// ε_D,ROW from ε_D,EU, supply elasticities, and S_RU in Mb/d.
struct SensitivityBounds {
    std::array<double, 2> eps_d_eu;   // {low, high magnitude}
    std::array<double, 2> divisor;    // {3, 1.5}
    std::array<double, 2> eps_s_ru;
    std::array<double, 2> eps_s_row;
    std::array<double, 2> s_ru_mbd;
};

inline SensitivityBounds sensitivity_bounds(Horizon h) {
    switch (h) {
        case Horizon::very_short_run:
            return {{-0.1, -0.3}, {3.0, 1.5}, {0.0, 0.0}, {0.0, 0.0}, {1.595, 4.095}};
        case Horizon::short_run:
            return {{-0.2, -0.3}, {3.0, 1.5}, {0.0, 0.1}, {0.0, 0.1}, {5.0, 8.0}};
        case Horizon::long_run:
            return {{-0.7, -1.1}, {3.0, 1.5}, {0.05, 0.2}, {0.05, 0.2}, {8.0, 8.0}};
    }
    throw std::logic_error("unknown horizon");
}

// One corner of the 2^5 sweep; `high[i]` selects the upper bound of toggle i
// in the order (eps_d_eu, divisor, eps_s_ru, eps_s_row, s_ru).
struct GridEntry {
    ModelParams params;
    std::array<bool, 5> high{};

    std::string label() const {
        std::string out;
        const char* names[5] = {"eps_d_eu", "div", "eps_s_ru", "eps_s_row", "s_ru"};
        for (int i = 0; i < 5; ++i) {
            if (i) out += ' ';
            out += names[i];
            out += high[static_cast<std::size_t>(i)] ? "=hi" : "=lo";
        }
        return out;
    }
};

// All 32 bound combinations, eps_d_eu slowest and s_ru fastest, low before
// high. When S_RU is perturbed, demand quantities, x, and S_ROW stay at the
// horizon baseline and y is recomputed from the quantities. The base case is
// not an element of the grid.
inline std::vector<GridEntry> sensitivity_grid(Horizon h, CostModel cm = CostModel::additive) {
    SensitivityBounds b = sensitivity_bounds(h);
    double s_row_mbd = quantities(h).s_row_mbd;
    std::vector<GridEntry> grid;
    grid.reserve(32);
    for (int mask = 0; mask < 32; ++mask) {
        GridEntry entry;
        for (int i = 0; i < 5; ++i)
            entry.high[static_cast<std::size_t>(i)] = (mask >> (4 - i)) & 1;
        ModelParams m = baseline(h, cm);
        m.eps_d_eu = b.eps_d_eu[entry.high[0]];
        m.eps_d_row = m.eps_d_eu / b.divisor[entry.high[1]];
        m.eps_s_ru = b.eps_s_ru[entry.high[2]];
        m.eps_s_row = b.eps_s_row[entry.high[3]];
        double s_ru_mbd = b.s_ru_mbd[entry.high[4]];
        m.s_ru = units::barrels_to_liters(s_ru_mbd);
        m.y = s_ru_mbd / (s_ru_mbd + s_row_mbd);
        entry.params = m;
        grid.push_back(entry);
    }
    return grid;
}

// Comparison constants for sizing a daily profit gain.
struct ContextConstants {
    double gdp_ru = 3700.0;       // MEUR/d
    double military_ru = 160.0;   // MEUR/d
    double soldier_salary = 7500.0;   // EUR/yr
    double police_salary = 7200.0;    // EUR/yr
    double troll_salary = 6800.0;     // EUR/yr
    double mlrs_unit = 2'000'000.0;   // EUR
    double tank_upgrade = 211'000.0;  // EUR
};

struct ContextSummary {
    double profit = 0.0;          // MEUR/d
    double gdp_share = 0.0;       // fraction of daily GDP
    double military_share = 0.0;  // fraction of daily military spending
    long soldiers = 0, police = 0, trolls = 0, mlrs = 0, tanks = 0;
};

inline ContextSummary context_report(double profit_meur_day,
                                     const ContextConstants& k = ContextConstants{}) {
    if (profit_meur_day < 0.0)
        throw std::invalid_argument("context_report: profit must be nonnegative");
    ContextSummary s;
    s.profit = profit_meur_day;
    s.gdp_share = profit_meur_day / k.gdp_ru;
    s.military_share = profit_meur_day / k.military_ru;
    double eur = profit_meur_day * 1e6;
    s.soldiers = static_cast<long>(std::floor(eur / k.soldier_salary));
    s.police = static_cast<long>(std::floor(eur / k.police_salary));
    s.trolls = static_cast<long>(std::floor(eur / k.troll_salary));
    s.mlrs = static_cast<long>(std::floor(eur / k.mlrs_unit));
    s.tanks = static_cast<long>(std::floor(eur / k.tank_upgrade));
    return s;
}

}  // namespace scenarios
}  // namespace oilmkt
