#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "oilmkt/units.hpp"

namespace oilmkt {

// Whether the non-oil component of the fuel price is a fixed per-liter cost c
// or a markup z proportional to the oil price.
enum class CostModel { additive, proportional };

// Raised when every elasticity term in the market-response denominator is zero:
// the equilibrium price is then locally indeterminate.
struct DegenerateElasticities : std::domain_error {
    DegenerateElasticities()
        : std::domain_error("all elasticity terms are zero; price response is indeterminate") {}
};

struct MissingIncome : std::domain_error {
    MissingIncome() : std::domain_error("income_eu is unset; income response undefined") {}
};

// One full parameterization of the market for one horizon and one cost model.
// Volumes are Ml/d, prices EUR/l, money MEUR/d.
struct ModelParams {
    double eps_d_eu = 0.0;   // EU road-fuel demand price elasticity, <= 0
    double eps_d_row = 0.0;  // rest-of-world oil demand price elasticity, <= 0
    double eps_s_ru = 0.0;   // Russian supply elasticity, >= 0
    double eps_s_row = 0.0;  // rest-of-world supply elasticity, >= 0
    double eps_i_eu = 0.0;   // EU income elasticity of fuel demand, >= 0

    double p = 0.0;     // producer oil price, EUR/l
    double tau = 0.0;   // fuel duty, EUR/l
    double c = 0.0;     // additive other cost, EUR/l (additive mode)
    double z = 0.0;     // proportional other cost (proportional mode)
    double v_eu = 0.0;  // EU VAT rate
    double e = 0.0;     // extraction cost, EUR/l

    double x = 0.0;  // EU road-fuel share of market demand, (0, 1]
    double y = 0.0;  // Russian share of market supply, [0, 1]

    double s_ru = 0.0;  // Russian export volume, Ml/d
    double d_eu = 0.0;  // EU road-fuel demand, Ml/d

    std::optional<double> income_eu;  // EU aggregate disposable income, MEUR/d

    CostModel cost_model = CostModel::additive;

    // Consumer fuel price in the EU under the active cost model.
    double consumer_price() const {
        if (cost_model == CostModel::additive) return (1.0 + v_eu) * (p + c + tau);
        return (1.0 + v_eu) * ((1.0 + z) * p + tau);
    }

    void validate() const {
        auto fail = [](const std::string& field, const std::string& why) {
            throw std::invalid_argument("ModelParams." + field + ": " + why);
        };
        if (!(p > 0.0)) fail("p", "must be positive");
        if (tau < 0.0) fail("tau", "must be nonnegative");
        if (v_eu < 0.0) fail("v_eu", "must be nonnegative");
        if (!(x > 0.0 && x <= 1.0)) fail("x", "must be in (0, 1]");
        if (!(y >= 0.0 && y <= 1.0)) fail("y", "must be in [0, 1]");
        if (eps_d_eu > 0.0) fail("eps_d_eu", "must be <= 0");
        if (eps_d_row > 0.0) fail("eps_d_row", "must be <= 0");
        if (eps_s_ru < 0.0) fail("eps_s_ru", "must be >= 0");
        if (eps_s_row < 0.0) fail("eps_s_row", "must be >= 0");
        if (eps_i_eu < 0.0) fail("eps_i_eu", "must be >= 0");
        if (s_ru < 0.0) fail("s_ru", "must be nonnegative");
        if (d_eu < 0.0) fail("d_eu", "must be nonnegative");
        if (!(consumer_price() > 0.0)) fail("consumer_price", "must be positive");
        if (income_eu && !(*income_eu > 0.0)) fail("income_eu", "must be positive when set");
    }
};

// A duty-tax change or an aggregate-income change. Sign conventions: a tax cut
// has delta_tau < 0; a payout to households has delta_income > 0.
struct PolicyShock {
    enum class Kind { duty_change, income_change };

    Kind kind = Kind::duty_change;
    double delta_tau = 0.0;     // EUR/l
    double delta_income = 0.0;  // MEUR/d

    static PolicyShock duty(double d_tau) {
        PolicyShock s;
        s.kind = Kind::duty_change;
        s.delta_tau = d_tau;
        return s;
    }
    static PolicyShock transfer(double d_income) {
        PolicyShock s;
        s.kind = Kind::income_change;
        s.delta_income = d_income;
        return s;
    }
};

// Signed responses: a tax cut gives d_fiscal_eu < 0 (revenue loss) and
// d_profit_ru > 0. The yearly profit field is absent where annualizing makes
// no sense (the very-short-run horizon).
struct PolicyResponse {
    double d_oil_price = 0.0;     // EUR/l
    double d_fuel_price_eu = 0.0; // EUR/l
    double d_fiscal_eu = 0.0;     // MEUR/d
    double d_profit_ru = 0.0;     // MEUR/d
    std::optional<double> d_profit_ru_yearly;  // MEUR/yr
};

namespace detail {

// Denominator shared by the tax and income price responses. The proportional
// variant drops the ratio on the ROW demand term and rescales the EU one.
inline double response_denominator(const ModelParams& m) {
    double supply = m.y * m.eps_s_ru + (1.0 - m.y) * m.eps_s_row;
    if (m.cost_model == CostModel::additive) {
        double eu = m.x * (m.p / (m.p + m.c + m.tau)) * m.eps_d_eu;
        double row = (1.0 - m.x) * (m.p / (m.p + m.c)) * m.eps_d_row;
        return supply - eu - row;
    }
    double zp = (1.0 + m.z) * m.p;
    double eu = m.x * (zp / (zp + m.tau)) * m.eps_d_eu;
    double row = (1.0 - m.x) * m.eps_d_row;
    return supply - eu - row;
}

}  // namespace detail

// dp/dtau: the pass-through of a duty change into the producer oil price.
inline double price_response_to_tax(const ModelParams& m) {
    double den = detail::response_denominator(m);
    if (den == 0.0) throw DegenerateElasticities{};
    double num;
    if (m.cost_model == CostModel::additive)
        num = m.x * (m.p / (m.p + m.c + m.tau)) * m.eps_d_eu;
    else
        num = m.x * (m.p / ((1.0 + m.z) * m.p + m.tau)) * m.eps_d_eu;
    return num / den;
}

inline double fuel_price_change(const ModelParams& m, double d_oil_price, double delta_tau) {
    if (m.cost_model == CostModel::additive)
        return (1.0 + m.v_eu) * (d_oil_price + delta_tau);
    return (1.0 + m.v_eu) * ((1.0 + m.z) * d_oil_price + delta_tau);
}

// Change in EU duty-plus-VAT revenue, MEUR/d, for a duty change delta_tau.
inline double fiscal_burden(const ModelParams& m, double dp_dtau, double delta_tau) {
    double bracket;
    if (m.cost_model == CostModel::additive) {
        double cp = m.p + m.c + m.tau;  // consumer price net of VAT
        double ratio = (m.tau + m.v_eu * cp) / cp;
        bracket = 1.0 + (m.v_eu + ratio * m.eps_d_eu) * (1.0 + dp_dtau);
    } else {
        double cp = (1.0 + m.z) * m.p + m.tau;
        double ratio = (m.tau + m.v_eu * cp) / cp;
        bracket = 1.0 + (m.v_eu + ratio * m.eps_d_eu) * (1.0 + (1.0 + m.z) * dp_dtau);
    }
    return bracket * m.d_eu * delta_tau;
}

inline double profit_change_from_price(const ModelParams& m, double d_oil_price) {
    return (1.0 + ((m.p - m.e) / m.p) * m.eps_s_ru) * m.s_ru * d_oil_price;
}

// dp/dI per MEUR/d of aggregate income.
inline double price_response_to_income(const ModelParams& m) {
    if (!m.income_eu) throw MissingIncome{};
    double den = detail::response_denominator(m);
    if (den == 0.0) throw DegenerateElasticities{};
    return (m.p / *m.income_eu) * m.x * m.eps_i_eu / den;
}

// Full response to a consumer-visible cut of `consumer_cut_cents` euro cents
// per liter (the duty change is cut/(1+VAT)).
inline PolicyResponse evaluate_tax_cut(const ModelParams& m, double consumer_cut_cents,
                                       bool with_yearly = true) {
    if (consumer_cut_cents < 0.0)
        throw std::invalid_argument("evaluate_tax_cut: cut must be nonnegative");
    double delta_tau = -(consumer_cut_cents / 100.0) / (1.0 + m.v_eu);
    double dp_dtau = price_response_to_tax(m);
    PolicyResponse r;
    r.d_oil_price = dp_dtau * delta_tau;
    r.d_fuel_price_eu = fuel_price_change(m, r.d_oil_price, delta_tau);
    r.d_fiscal_eu = fiscal_burden(m, dp_dtau, delta_tau);
    r.d_profit_ru = profit_change_from_price(m, r.d_oil_price);
    if (with_yearly) r.d_profit_ru_yearly = units::annualize(r.d_profit_ru);
    return r;
}

// Full response to a lump-sum transfer of `transfer` MEUR/d to households.
inline PolicyResponse evaluate_transfer(const ModelParams& m, double transfer,
                                        bool with_yearly = true) {
    if (transfer < 0.0)
        throw std::invalid_argument("evaluate_transfer: transfer must be nonnegative");
    PolicyResponse r;
    r.d_oil_price = price_response_to_income(m) * transfer;
    double fac = (1.0 + m.v_eu);
    if (m.cost_model == CostModel::proportional) fac *= (1.0 + m.z);
    r.d_fuel_price_eu = fac * r.d_oil_price;
    r.d_fiscal_eu = -transfer;
    r.d_profit_ru = profit_change_from_price(m, r.d_oil_price);
    if (with_yearly) r.d_profit_ru_yearly = units::annualize(r.d_profit_ru);
    return r;
}

inline PolicyResponse evaluate(const ModelParams& m, const PolicyShock& shock,
                               bool with_yearly = true) {
    if (shock.kind == PolicyShock::Kind::duty_change) {
        double cut_cents = -shock.delta_tau * (1.0 + m.v_eu) * 100.0;
        return evaluate_tax_cut(m, cut_cents, with_yearly);
    }
    return evaluate_transfer(m, shock.delta_income, with_yearly);
}

}  // namespace oilmkt
