#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oilmkt::regression {

struct DegenerateRegressor : std::invalid_argument {
    DegenerateRegressor() : std::invalid_argument("regressor has zero variance") {}
};

struct LengthMismatch : std::invalid_argument {
    LengthMismatch() : std::invalid_argument("series lengths differ") {}
};

namespace detail {

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    auto cont_frac = [](double a, double b, double x) {
        const double tiny = 1e-300;
        const double eps = 1e-15;
        double qab = a + b, qap = a + 1.0, qam = a - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * x / qap;
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 500; ++m) {
            double m2 = 2.0 * m;
            double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + aa / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + aa / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < eps) break;
        }
        return h;
    };
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * cont_frac(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * cont_frac(b, a, 1.0 - x) / b;
}

}  // namespace detail

// Two-sided p-value of a t-statistic with df degrees of freedom.
inline double student_t_p_value(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_p_value: df must be positive");
    if (!std::isfinite(t)) return 0.0;
    return detail::incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

// Significance stars as printed under the published regression table.
inline std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.05) return "**";
    if (p < 0.1) return "*";
    return "";
}

struct OlsFit {
    double slope = 0.0, intercept = 0.0;
    double se_slope = 0.0, se_intercept = 0.0;
    double t_slope = 0.0, t_intercept = 0.0;
    double p_slope = 1.0, p_intercept = 1.0;
    double sse = 0.0;
    std::size_t n = 0;

    std::string stars_slope() const { return significance_stars(p_slope); }
    std::string stars_intercept() const { return significance_stars(p_intercept); }
};

// Classical OLS of ys on xs with intercept; homoskedastic standard errors with
// s^2 = SSE/(n-2).
inline OlsFit fit_ols(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw LengthMismatch{};
    std::size_t n = xs.size();
    if (n < 3) throw std::invalid_argument("fit_ols: need at least 3 observations");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[i] - my);
    }
    if (sxx == 0.0) throw DegenerateRegressor{};

    OlsFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        fit.sse += r * r;
    }
    double df = static_cast<double>(n) - 2.0;
    double s2 = fit.sse / df;
    fit.se_slope = std::sqrt(s2 / sxx);
    fit.se_intercept = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
    fit.t_slope = fit.se_slope > 0.0 ? fit.slope / fit.se_slope
                                     : std::numeric_limits<double>::infinity();
    fit.t_intercept = fit.se_intercept > 0.0 ? fit.intercept / fit.se_intercept
                                             : std::numeric_limits<double>::infinity();
    fit.p_slope = fit.se_slope > 0.0 ? student_t_p_value(fit.t_slope, df) : 0.0;
    fit.p_intercept = fit.se_intercept > 0.0 ? student_t_p_value(fit.t_intercept, df) : 0.0;
    return fit;
}

inline std::vector<double> first_differences(std::span<const double> s) {
    if (s.size() < 2) throw std::invalid_argument("first_differences: need at least 2 points");
    std::vector<double> out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) out.push_back(s[i] - s[i - 1]);
    return out;
}

struct PricePoint {
    std::string date;  // ISO-8601, YYYY-MM-DD
    double brent = 0.0;
    double urals = 0.0;
};

inline bool is_iso_date(const std::string& d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (d[i] < '0' || d[i] > '9') return false;
    return true;
}

// Ordered (date, brent, urals) observations. ISO dates order lexicographically.
struct PriceSeries {
    std::vector<PricePoint> points;

    void validate() const {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!is_iso_date(points[i].date))
                throw std::invalid_argument("PriceSeries: bad date '" + points[i].date + "'");
            if (i > 0 && !(points[i - 1].date < points[i].date))
                throw std::invalid_argument("PriceSeries: dates not strictly increasing at '" +
                                            points[i].date + "'");
        }
    }

    // CSV with header `date,brent,urals`.
    static PriceSeries from_csv(std::istream& in) {
        PriceSeries series;
        std::string line;
        if (!std::getline(in, line))
            throw std::invalid_argument("price CSV: empty input");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != "date,brent,urals")
            throw std::invalid_argument("price CSV: expected header 'date,brent,urals', got '" +
                                        line + "'");
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::istringstream ss(line);
            PricePoint pt;
            std::string field;
            if (!std::getline(ss, pt.date, ',') || !std::getline(ss, field, ','))
                throw std::invalid_argument("price CSV: malformed line " + std::to_string(lineno));
            std::size_t pos = 0;
            pt.brent = std::stod(field, &pos);
            if (pos != field.size())
                throw std::invalid_argument("price CSV: bad brent at line " +
                                            std::to_string(lineno));
            if (!std::getline(ss, field))
                throw std::invalid_argument("price CSV: missing urals at line " +
                                            std::to_string(lineno));
            pt.urals = std::stod(field, &pos);
            if (pos != field.size())
                throw std::invalid_argument("price CSV: bad urals at line " +
                                            std::to_string(lineno));
            series.points.push_back(std::move(pt));
        }
        series.validate();
        return series;
    }
};

struct InsufficientWindow : std::invalid_argument {
    InsufficientWindow(const std::string& window, std::size_t n, std::size_t need)
        : std::invalid_argument("regression window '" + window + "' has " + std::to_string(n) +
                                " observations, needs at least " + std::to_string(need)) {}
};

// Four regressions of Brent on Urals (Urals as regressor): levels and first
// differences, before and from the split date. First differences are taken
// within each window.
struct UralsBrentReport {
    OlsFit levels_pre, levels_post, fd_pre, fd_post;
    std::size_t n_pre = 0, n_post = 0;
    std::string split_date;
};

inline UralsBrentReport urals_brent_analysis(const PriceSeries& data,
                                             const std::string& split_date) {
    data.validate();
    if (!is_iso_date(split_date))
        throw std::invalid_argument("urals_brent_analysis: bad split date '" + split_date + "'");
    std::vector<double> brent_pre, urals_pre, brent_post, urals_post;
    for (const PricePoint& pt : data.points) {
        if (pt.date < split_date) {
            brent_pre.push_back(pt.brent);
            urals_pre.push_back(pt.urals);
        } else {
            brent_post.push_back(pt.brent);
            urals_post.push_back(pt.urals);
        }
    }
    if (brent_pre.size() < 4) throw InsufficientWindow("pre", brent_pre.size(), 4);
    if (brent_post.size() < 4) throw InsufficientWindow("post", brent_post.size(), 4);

    UralsBrentReport rep;
    rep.split_date = split_date;
    rep.n_pre = brent_pre.size();
    rep.n_post = brent_post.size();
    rep.levels_pre = fit_ols(urals_pre, brent_pre);
    rep.levels_post = fit_ols(urals_post, brent_post);
    std::vector<double> bfd = first_differences(brent_pre);
    std::vector<double> ufd = first_differences(urals_pre);
    rep.fd_pre = fit_ols(ufd, bfd);
    bfd = first_differences(brent_post);
    ufd = first_differences(urals_post);
    rep.fd_post = fit_ols(ufd, bfd);
    return rep;
}

}  // namespace oilmkt::regression
