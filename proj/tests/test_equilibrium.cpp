#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oilmkt/equilibrium.hpp"
#include "oilmkt/scenarios.hpp"

using namespace oilmkt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("the baseline is a fixed point of the calibrated market") {
    for (Horizon h : {Horizon::very_short_run, Horizon::short_run, Horizon::long_run}) {
        INFO(to_string(h));
        ModelParams m = scenarios::baseline(h);
        IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
        // Excess demand vanishes exactly at the calibration point...
        CHECK(mkt.excess_demand(m.p, m.tau, *m.income_eu) == 0.0);
        // ...and the solver comes back to it (zero-elasticity horizons have a
        // sign change only through the demand side, which all three keep).
        EquilibriumSolution s = solve_price(mkt, m.tau, *m.income_eu);
        CHECK_THAT(s.price, WithinRel(m.p, 1e-12));
        double total = s.d_eu + s.d_row;
        CHECK(std::abs(s.residual) <= 1e-10 * total);
        CHECK(s.iterations <= 200);
    }
}

TEST_CASE("reference quantities follow the shares, not the rounded tables") {
    ModelParams m = scenarios::baseline(Horizon::short_run);
    IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
    CHECK_THAT(mkt.total(), WithinRel(m.s_ru / m.y, 1e-15));
    CHECK_THAT(mkt.s_ru0(), WithinRel(m.s_ru, 1e-15));
    CHECK_THAT(mkt.d_eu0(), WithinRel(m.x * mkt.total(), 1e-15));
    CHECK_THAT(mkt.s_ru0() + mkt.s_row0(), WithinRel(mkt.d_eu0() + mkt.d_row0(), 1e-15));
}

TEST_CASE("calibration rejects inconsistent inputs") {
    ModelParams m = scenarios::baseline(Horizon::short_run);
    m.d_eu = 2.0 * m.d_eu;  // far outside the tolerance band
    CHECK_THROWS_AS(IsoelasticMarket::calibrate(m), CalibrationError);

    ModelParams zero_y = scenarios::baseline(Horizon::short_run);
    zero_y.y = 0.0;
    CHECK_THROWS_AS(IsoelasticMarket::calibrate(zero_y), CalibrationError);

    CHECK_THROWS_AS(IsoelasticMarket::calibrate(scenarios::baseline(Horizon::short_run), -0.1),
                    CalibrationError);
}

TEST_CASE("a perfectly inelastic market rejects the solve with NoBracket") {
    ModelParams m = scenarios::baseline(Horizon::short_run);
    m.eps_d_eu = m.eps_d_row = m.eps_s_ru = m.eps_s_row = 0.0;
    m.eps_i_eu = 0.0;
    IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
    CHECK_THROWS_AS(solve_price(mkt, m.tau - 0.1, *m.income_eu), NoBracket);
}

TEST_CASE("market clearing after a duty cut, all horizons") {
    for (Horizon h : {Horizon::very_short_run, Horizon::short_run, Horizon::long_run}) {
        INFO(to_string(h));
        ModelParams m = scenarios::baseline(h);
        IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
        double tau1 = m.tau - 0.2 / (1.0 + m.v_eu);
        EquilibriumSolution s = solve_price(mkt, tau1, *m.income_eu);
        double total = s.d_eu + s.d_row;
        CHECK(std::abs(s.residual) <= 1e-10 * total);
        CHECK(s.price > m.p);  // a duty cut raises the producer price
        CHECK(s.price < m.p + 0.2);
    }
}

TEST_CASE("exact effects agree with the linear model to first order") {
    for (Horizon h : {Horizon::very_short_run, Horizon::short_run, Horizon::long_run}) {
        INFO(to_string(h));
        ModelParams m = scenarios::baseline(h);
        IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
        PolicyShock small = PolicyShock::duty(-0.001 / (1.0 + m.v_eu));
        PolicyResponse lin = evaluate(m, small, false);
        PolicyResponse exact = exact_policy_effects(mkt, small, false);
        CHECK_THAT(exact.d_oil_price, WithinRel(lin.d_oil_price, 1e-2));
        CHECK_THAT(exact.d_profit_ru, WithinRel(lin.d_profit_ru, 1e-2));
        CHECK_THAT(exact.d_fiscal_eu, WithinRel(lin.d_fiscal_eu, 1e-2));
    }
}

TEST_CASE("halving the shock roughly halves the linear-vs-exact gap") {
    ModelParams m = scenarios::baseline(Horizon::short_run);
    IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
    auto gap = [&](double cut_eur) {
        PolicyShock s = PolicyShock::duty(-cut_eur);
        double lin = evaluate(m, s, false).d_oil_price;
        double exact = exact_policy_effects(mkt, s, false).d_oil_price;
        return std::abs(lin - exact) / std::abs(exact);
    };
    double g1 = gap(0.16);
    double g2 = gap(0.08);
    double g3 = gap(0.04);
    CHECK(g2 / g1 > 0.35);
    CHECK(g2 / g1 < 0.65);
    CHECK(g3 / g2 > 0.35);
    CHECK(g3 / g2 < 0.65);
}

TEST_CASE("rest-of-world VAT level never moves the solution") {
    for (Horizon h : {Horizon::very_short_run, Horizon::short_run, Horizon::long_run}) {
        ModelParams m = scenarios::baseline(h);
        double tau1 = m.tau - 0.15;
        EquilibriumSolution a =
            solve_price(IsoelasticMarket::calibrate(m, 0.0), tau1, *m.income_eu);
        EquilibriumSolution b =
            solve_price(IsoelasticMarket::calibrate(m, 0.25), tau1, *m.income_eu);
        // VAT factors cancel inside the curve ratios, so this is bit-exact.
        CHECK(a.price == b.price);
        CHECK(a.d_row == b.d_row);
        CHECK(a.s_ru == b.s_ru);
    }
}

TEST_CASE("transfer shock through the exact market") {
    ModelParams m = scenarios::baseline(Horizon::short_run);
    IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
    PolicyShock shock = PolicyShock::transfer(170.0);
    PolicyResponse exact = exact_policy_effects(mkt, shock, false);
    PolicyResponse lin = evaluate(m, shock, false);
    CHECK(exact.d_oil_price > 0.0);
    CHECK(exact.d_fiscal_eu == -170.0);
    CHECK_THAT(exact.d_oil_price, WithinRel(lin.d_oil_price, 2e-2));

    ModelParams no_income = m;
    no_income.income_eu.reset();
    IsoelasticMarket mkt2 = IsoelasticMarket::calibrate(no_income);
    CHECK_THROWS_AS(exact_policy_effects(mkt2, shock, false), MissingIncome);
}

TEST_CASE("proportional-cost market clears and responds in sign") {
    ModelParams m = scenarios::baseline(Horizon::long_run, CostModel::proportional);
    IsoelasticMarket mkt = IsoelasticMarket::calibrate(m);
    CHECK(mkt.excess_demand(m.p, m.tau, *m.income_eu) == 0.0);
    PolicyResponse exact =
        exact_policy_effects(mkt, PolicyShock::duty(-0.2 / (1.0 + m.v_eu)), false);
    CHECK(exact.d_oil_price > 0.0);
    CHECK(exact.d_fuel_price_eu < 0.0);
    CHECK(exact.d_profit_ru > 0.0);
}
