#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "newsgram/date.hpp"

namespace newsgram::metrics {

/// Ordinary least squares of y on x with a t-test on the slope.
///
/// When the residuals vanish, slope_se is 0. A zero slope then yields t = 0
/// and p = 1 (a flat series has no trend); any other slope is a perfect fit
/// whose t and p are left undefined.
struct TrendFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    std::optional<double> t_stat;
    std::optional<double> p_value;
    std::size_t n = 0;
    bool perfect_fit = false;
};

/// Throws DegenerateFit for fewer than three points or constant x.
TrendFit fit_linear(std::span<const double> x, std::span<const double> y);

/// x is the day offset from the first date of the series.
TrendFit fit_linear_trend(std::span<const std::pair<Date, double>> series);

/// Two-sided p-value of a t statistic with df degrees of freedom.
double t_test_p_value(double t, double df);

struct WeekMean {
    int week = 0;  // 1-based from corpus_start
    Date start;
    double mean = 0.0;
    std::size_t days = 0;
};

/// Mean per week over the days present; partial weeks use what is there.
std::vector<WeekMean> weekly_mean(std::span<const std::pair<Date, double>> series, Date corpus_start);

}  // namespace newsgram::metrics
