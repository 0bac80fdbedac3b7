#pragma once

#include <stdexcept>
#include <string>

namespace oilmkt::units {

inline constexpr double liters_per_barrel = 170.0;
inline constexpr double days_per_year = 365.0;

enum class VolumeUnit { mega_liters_per_day, mega_barrels_per_day };
enum class MoneyUnit { meur_per_day, meur_per_year };

// A nonnegative flow of oil, in Ml/d or Mb/d.
struct VolumeRate {
    double value = 0.0;
    VolumeUnit unit = VolumeUnit::mega_liters_per_day;

    VolumeRate() = default;
    VolumeRate(double v, VolumeUnit u) : value(v), unit(u) {
        if (v < 0.0)
            throw std::invalid_argument("VolumeRate: value must be nonnegative, got " +
                                        std::to_string(v));
    }

    VolumeRate to(VolumeUnit target) const {
        if (target == unit) return *this;
        if (target == VolumeUnit::mega_liters_per_day)
            return {value * liters_per_barrel, target};
        return {value / liters_per_barrel, target};
    }
};

// A money flow, MEUR per day or per year.
struct MoneyRate {
    double value = 0.0;
    MoneyUnit unit = MoneyUnit::meur_per_day;

    MoneyRate() = default;
    MoneyRate(double v, MoneyUnit u) : value(v), unit(u) {}

    MoneyRate to(MoneyUnit target) const {
        if (target == unit) return *this;
        if (target == MoneyUnit::meur_per_year) return {value * days_per_year, target};
        return {value / days_per_year, target};
    }
};

inline double barrels_to_liters(double mega_barrels_per_day) {
    if (mega_barrels_per_day < 0.0)
        throw std::invalid_argument("barrels_to_liters: negative volume");
    return mega_barrels_per_day * liters_per_barrel;
}

inline double liters_to_barrels(double mega_liters_per_day) {
    if (mega_liters_per_day < 0.0)
        throw std::invalid_argument("liters_to_barrels: negative volume");
    return mega_liters_per_day / liters_per_barrel;
}

// Converts a USD-per-barrel crude price into EUR per liter of fuel product.
inline double oil_price_per_liter(double usd_per_barrel, double fx_eur_per_usd) {
    if (usd_per_barrel <= 0.0)
        throw std::invalid_argument("oil_price_per_liter: price must be positive");
    if (fx_eur_per_usd <= 0.0)
        throw std::invalid_argument("oil_price_per_liter: FX rate must be positive");
    return usd_per_barrel * fx_eur_per_usd / liters_per_barrel;
}

inline double annualize(double meur_per_day) { return meur_per_day * days_per_year; }

}  // namespace oilmkt::units
