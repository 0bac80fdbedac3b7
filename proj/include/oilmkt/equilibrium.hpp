#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "oilmkt/model.hpp"

namespace oilmkt {

struct NoBracket : std::runtime_error {
    NoBracket() : std::runtime_error("excess demand does not change sign across the bracket") {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(double residual)
        : std::runtime_error("price solver hit the iteration cap; residual " +
                             std::to_string(residual) + " Ml/d") {}
};

struct CalibrationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EquilibriumSolution {
    double price = 0.0;  // EUR/l
    double d_eu = 0.0, d_row = 0.0, s_ru = 0.0, s_row = 0.0;  // Ml/d
    double residual = 0.0;  // Ml/d, demand minus supply at `price`
    int iterations = 0;
};

// Constant-elasticity demand/supply curves calibrated so the baseline clears
// exactly. The total market is anchored on the supply side (S0 = s_ru / y) and
// all four reference quantities are built from the shares x and y, so the
// market's local shares coincide with the ones the linearized model uses.
class IsoelasticMarket {
  public:
    // Rejects baselines whose tabulated d_eu disagrees with x * total by more
    // than share_tolerance (relative). Published rounded quantity tables
    // typically sit within about 1% of their own shares.
    static IsoelasticMarket calibrate(const ModelParams& params, double v_row = 0.0,
                                      double share_tolerance = 0.02) {
        params.validate();
        if (!(params.y > 0.0))
            throw CalibrationError("calibrate: y must be positive to anchor the market total");
        if (!(params.s_ru > 0.0))
            throw CalibrationError("calibrate: s_ru must be positive");
        if (v_row < 0.0) throw CalibrationError("calibrate: v_row must be nonnegative");

        IsoelasticMarket mkt;
        mkt.params_ = params;
        mkt.v_row_ = v_row;
        mkt.total0_ = params.s_ru / params.y;
        mkt.s_ru0_ = params.y * mkt.total0_;
        mkt.s_row0_ = (1.0 - params.y) * mkt.total0_;
        mkt.d_eu0_ = params.x * mkt.total0_;
        mkt.d_row0_ = (1.0 - params.x) * mkt.total0_;

        if (params.d_eu > 0.0) {
            double gap = std::abs(mkt.d_eu0_ - params.d_eu) / params.d_eu;
            if (gap > share_tolerance)
                throw CalibrationError(
                    "calibrate: d_eu inconsistent with x * total by relative " +
                    std::to_string(gap));
        }
        return mkt;
    }

    const ModelParams& baseline() const { return params_; }
    double v_row() const { return v_row_; }
    double total() const { return total0_; }
    double d_eu0() const { return d_eu0_; }
    double d_row0() const { return d_row0_; }
    double s_ru0() const { return s_ru0_; }
    double s_row0() const { return s_row0_; }

    // Demand minus supply at price p, duty tau, income I. The consumer-price
    // ratios are taken net of VAT: the VAT factors cancel between numerator
    // and reference, which keeps results bit-identical across v_row.
    double excess_demand(double p, double tau, double income) const {
        const ModelParams& m = params_;
        double f_ratio, q_ratio;
        if (m.cost_model == CostModel::additive) {
            f_ratio = (p + m.c + tau) / (m.p + m.c + m.tau);
            q_ratio = (p + m.c) / (m.p + m.c);
        } else {
            f_ratio = ((1.0 + m.z) * p + tau) / ((1.0 + m.z) * m.p + m.tau);
            q_ratio = p / m.p;
        }
        double income_factor = 1.0;
        if (m.income_eu) income_factor = std::pow(income / *m.income_eu, m.eps_i_eu);
        double d_eu = d_eu0_ * std::pow(f_ratio, m.eps_d_eu) * income_factor;
        double d_row = d_row0_ * std::pow(q_ratio, m.eps_d_row);
        double s_ru = s_ru0_ * std::pow(p / m.p, m.eps_s_ru);
        double s_row = s_row0_ * std::pow(p / m.p, m.eps_s_row);
        return d_eu + d_row - s_ru - s_row;
    }

    EquilibriumSolution quantities_at(double p, double tau, double income) const {
        const ModelParams& m = params_;
        EquilibriumSolution s;
        s.price = p;
        double f_ratio, q_ratio;
        if (m.cost_model == CostModel::additive) {
            f_ratio = (p + m.c + tau) / (m.p + m.c + m.tau);
            q_ratio = (p + m.c) / (m.p + m.c);
        } else {
            f_ratio = ((1.0 + m.z) * p + tau) / ((1.0 + m.z) * m.p + m.tau);
            q_ratio = p / m.p;
        }
        double income_factor = 1.0;
        if (m.income_eu) income_factor = std::pow(income / *m.income_eu, m.eps_i_eu);
        s.d_eu = d_eu0_ * std::pow(f_ratio, m.eps_d_eu) * income_factor;
        s.d_row = d_row0_ * std::pow(q_ratio, m.eps_d_row);
        s.s_ru = s_ru0_ * std::pow(p / m.p, m.eps_s_ru);
        s.s_row = s_row0_ * std::pow(p / m.p, m.eps_s_row);
        s.residual = s.d_eu + s.d_row - s.s_ru - s.s_row;
        return s;
    }

  private:
    ModelParams params_;
    double v_row_ = 0.0;
    double total0_ = 0.0;
    double d_eu0_ = 0.0, d_row0_ = 0.0, s_ru0_ = 0.0, s_row0_ = 0.0;
};

// Bisection on [p0/100, 100*p0] to relative tolerance 1e-12, cap 200.
// Requires a strict sign change; zero-elasticity markets have constant excess
// demand and are rejected.
inline EquilibriumSolution solve_price(const IsoelasticMarket& market, double tau, double income,
                                       double rel_tol = 1e-12, int max_iter = 200) {
    double p0 = market.baseline().p;
    double lo = p0 / 100.0, hi = p0 * 100.0;
    double e_lo = market.excess_demand(lo, tau, income);
    double e_hi = market.excess_demand(hi, tau, income);
    if (!(e_lo > 0.0 && e_hi < 0.0) && !(e_lo < 0.0 && e_hi > 0.0)) throw NoBracket{};

    int it = 0;
    double mid = 0.5 * (lo + hi);
    for (; it < max_iter; ++it) {
        mid = 0.5 * (lo + hi);
        double e_mid = market.excess_demand(mid, tau, income);
        if (e_mid == 0.0) break;
        if ((e_mid > 0.0) == (e_lo > 0.0)) {
            lo = mid;
            e_lo = e_mid;
        } else {
            hi = mid;
        }
        if ((hi - lo) <= rel_tol * mid) {
            mid = 0.5 * (lo + hi);
            break;
        }
    }
    EquilibriumSolution sol = market.quantities_at(mid, tau, income);
    sol.iterations = it;
    double total = sol.d_eu + sol.d_row;
    if (it >= max_iter && std::abs(sol.residual) > 1e-8 * total) throw NonConvergence(sol.residual);
    return sol;
}

// Exact counterparts of the linearized responses: solves the market before and
// after the shock and differences prices, revenue, and profit directly.
inline PolicyResponse exact_policy_effects(const IsoelasticMarket& market,
                                           const PolicyShock& shock, bool with_yearly = true) {
    const ModelParams& m = market.baseline();
    double tau0 = m.tau;
    double income0 = m.income_eu.value_or(1.0);
    double tau1 = tau0, income1 = income0;
    if (shock.kind == PolicyShock::Kind::duty_change) {
        tau1 += shock.delta_tau;
    } else {
        if (!m.income_eu) throw MissingIncome{};
        income1 += shock.delta_income;
    }
    EquilibriumSolution after = solve_price(market, tau1, income1);
    EquilibriumSolution before = market.quantities_at(m.p, tau0, income0);

    auto revenue = [&](const EquilibriumSolution& s, double tau) {
        if (m.cost_model == CostModel::additive)
            return (m.v_eu * (s.price + m.c) + (1.0 + m.v_eu) * tau) * s.d_eu;
        return (m.v_eu * (1.0 + m.z) * s.price + (1.0 + m.v_eu) * tau) * s.d_eu;
    };
    auto fuel_price = [&](double p, double tau) {
        if (m.cost_model == CostModel::additive) return (1.0 + m.v_eu) * (p + m.c + tau);
        return (1.0 + m.v_eu) * ((1.0 + m.z) * p + tau);
    };

    PolicyResponse r;
    r.d_oil_price = after.price - before.price;
    r.d_fuel_price_eu = fuel_price(after.price, tau1) - fuel_price(before.price, tau0);
    if (shock.kind == PolicyShock::Kind::duty_change)
        r.d_fiscal_eu = revenue(after, tau1) - revenue(before, tau0);
    else
        r.d_fiscal_eu = -shock.delta_income;  // budget cost of the payout, as in the linear model
    r.d_profit_ru = (after.price - m.e) * after.s_ru - (before.price - m.e) * before.s_ru;
    if (with_yearly) r.d_profit_ru_yearly = units::annualize(r.d_profit_ru);
    return r;
}

}  // namespace oilmkt
