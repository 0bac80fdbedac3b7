#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "oilmkt/regression.hpp"

using namespace oilmkt::regression;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("OLS against a hand-computed example") {
    // x = {1,2,3,4}, y = {2,3,5,4}: mx=2.5, my=3.5, Sxx=5, Sxy=4.
    std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys = {2.0, 3.0, 5.0, 4.0};
    OlsFit f = fit_ols(xs, ys);
    CHECK_THAT(f.slope, WithinRel(0.8, 1e-12));
    CHECK_THAT(f.intercept, WithinRel(1.5, 1e-12));
    // Residuals {-0.3, -0.1, 1.1, -0.7}: SSE = 1.8, s^2 = 0.9.
    CHECK_THAT(f.sse, WithinAbs(1.8, 1e-12));
    CHECK_THAT(f.se_slope, WithinRel(std::sqrt(0.9 / 5.0), 1e-12));
    CHECK_THAT(f.se_intercept, WithinRel(std::sqrt(0.9 * (0.25 + 6.25 / 5.0)), 1e-12));
    CHECK_THAT(f.t_slope, WithinRel(0.8 / std::sqrt(0.18), 1e-12));
    CHECK(f.n == 4);
}

TEST_CASE("a perfectly collinear sample recovers the line exactly") {
    std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.25 * x - 1.5);
    OlsFit f = fit_ols(xs, ys);
    CHECK_THAT(f.slope, WithinRel(3.25, 1e-12));
    CHECK_THAT(f.intercept, WithinRel(-1.5, 1e-12));
    CHECK(f.sse <= 1e-24);
    CHECK(f.p_slope <= 1e-10);  // infinite-t convention
}

TEST_CASE("OLS slope is invariant to affine shifts of the regressand") {
    std::vector<double> xs = {1.0, 2.0, 4.0, 8.0, 9.0, 11.0};
    std::vector<double> ys = {2.2, 2.9, 5.3, 8.8, 9.1, 12.0};
    OlsFit base = fit_ols(xs, ys);
    std::vector<double> shifted;
    for (double y : ys) shifted.push_back(2.0 * y + 7.0);
    OlsFit scaled = fit_ols(xs, shifted);
    CHECK_THAT(scaled.slope, WithinRel(2.0 * base.slope, 1e-12));
    CHECK_THAT(scaled.intercept, WithinRel(2.0 * base.intercept + 7.0, 1e-12));
    // t-statistics and p-values are scale-free.
    CHECK_THAT(scaled.t_slope, WithinRel(base.t_slope, 1e-10));
    CHECK_THAT(scaled.p_slope, WithinRel(base.p_slope, 1e-10));
}

TEST_CASE("degenerate OLS inputs raise") {
    std::vector<double> same = {2.0, 2.0, 2.0, 2.0};
    std::vector<double> ys = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(fit_ols(same, ys), DegenerateRegressor);
    std::vector<double> shorter = {1.0, 2.0};
    CHECK_THROWS_AS(fit_ols(shorter, ys), LengthMismatch);
    std::vector<double> two = {1.0, 2.0};
    CHECK_THROWS_AS(fit_ols(two, two), std::invalid_argument);
}

TEST_CASE("Student-t p-values: symmetry, limits, and a known point") {
    CHECK(student_t_p_value(0.0, 10.0) == 1.0);
    CHECK(student_t_p_value(2.0, 10.0) == student_t_p_value(-2.0, 10.0));
    // t with 1 df is Cauchy: P(|T| > 1) = 0.5 exactly.
    CHECK_THAT(student_t_p_value(1.0, 1.0), WithinRel(0.5, 1e-10));
    // Large-df limit approaches the normal tail: P(|Z| > 1.96) ~ 0.05.
    CHECK_THAT(student_t_p_value(1.96, 1e6), WithinAbs(0.05, 1e-3));
    // Monotone in |t|.
    CHECK(student_t_p_value(3.0, 20.0) < student_t_p_value(2.0, 20.0));
    CHECK_THROWS_AS(student_t_p_value(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("significance stars follow the table footnote") {
    CHECK(significance_stars(0.0005) == "***");
    CHECK(significance_stars(0.01) == "**");
    CHECK(significance_stars(0.07) == "*");
    CHECK(significance_stars(0.2) == "");
    CHECK(significance_stars(0.05) == "*");    // boundaries are strict
    CHECK(significance_stars(0.001) == "**");
}

TEST_CASE("first differences") {
    std::vector<double> s = {1.0, 4.0, 2.0, 2.0};
    auto d = first_differences(s);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 3.0);
    CHECK(d[1] == -2.0);
    CHECK(d[2] == 0.0);
    std::vector<double> one = {1.0};
    CHECK_THROWS_AS(first_differences(one), std::invalid_argument);
}

TEST_CASE("price CSV parsing is exact and validating") {
    std::istringstream in(
        "date,brent,urals\n"
        "2022-01-03,78.98,76.25\n"
        "2022-01-04,80.0,77.5\n"
        "2022-01-05,81.25,78.125\n");
    PriceSeries s = PriceSeries::from_csv(in);
    REQUIRE(s.points.size() == 3);
    CHECK(s.points[0].date == "2022-01-03");
    CHECK(s.points[0].brent == 78.98);  // bit-exact strtod round-trip
    CHECK(s.points[2].urals == 78.125);

    std::istringstream bad_header("time,brent,urals\n2022-01-03,1,2\n");
    CHECK_THROWS_AS(PriceSeries::from_csv(bad_header), std::invalid_argument);

    std::istringstream out_of_order(
        "date,brent,urals\n2022-01-04,1,2\n2022-01-03,1,2\n");
    CHECK_THROWS_AS(PriceSeries::from_csv(out_of_order), std::invalid_argument);

    std::istringstream bad_number("date,brent,urals\n2022-01-03,abc,2\n");
    CHECK_THROWS_AS(PriceSeries::from_csv(bad_number), std::invalid_argument);

    std::istringstream crlf("date,brent,urals\r\n2022-01-03,1.5,2.5\r\n2022-01-04,1.6,2.6\r\n");
    PriceSeries c = PriceSeries::from_csv(crlf);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[1].urals == 2.6);

    std::istringstream empty("");
    CHECK_THROWS_AS(PriceSeries::from_csv(empty), std::invalid_argument);
}

TEST_CASE("pre/post split analysis") {
    // Pre window tracks Urals one-for-one plus 2; post decouples to a flat-ish
    // Brent with noise so both windows have positive residual variance.
    PriceSeries s;
    const char* pre_dates[] = {"2022-01-03", "2022-01-04", "2022-01-05", "2022-01-06",
                               "2022-01-07"};
    double pre_urals[] = {70.0, 72.0, 71.0, 74.0, 73.0};
    double pre_noise[] = {0.1, -0.1, 0.05, -0.05, 0.0};
    for (int i = 0; i < 5; ++i)
        s.points.push_back({pre_dates[i], pre_urals[i] + 2.0 + pre_noise[i], pre_urals[i]});
    const char* post_dates[] = {"2022-02-24", "2022-02-25", "2022-02-28", "2022-03-01",
                                "2022-03-02"};
    double post_urals[] = {60.0, 55.0, 58.0, 52.0, 50.0};
    double post_brent[] = {95.0, 96.5, 94.0, 97.0, 96.0};
    for (int i = 0; i < 5; ++i) s.points.push_back({post_dates[i], post_brent[i], post_urals[i]});

    UralsBrentReport rep = urals_brent_analysis(s, "2022-02-24");
    CHECK(rep.n_pre == 5);
    CHECK(rep.n_post == 5);
    CHECK(rep.split_date == "2022-02-24");
    // Pre-war levels: slope close to 1 and tightly estimated.
    CHECK_THAT(rep.levels_pre.slope, WithinAbs(1.0, 0.05));
    CHECK(rep.levels_pre.p_slope < 0.001);
    // Post split the level relationship is much weaker.
    CHECK(std::abs(rep.levels_post.slope) < 0.5);
    // First differences drop one observation per window.
    CHECK(rep.fd_pre.n == 4);
    CHECK(rep.fd_post.n == 4);

    CHECK_THROWS_AS(urals_brent_analysis(s, "24/02/2022"), std::invalid_argument);
    CHECK_THROWS_AS(urals_brent_analysis(s, "2021-01-01"), InsufficientWindow);
    CHECK_THROWS_AS(urals_brent_analysis(s, "2023-01-01"), InsufficientWindow);
}
