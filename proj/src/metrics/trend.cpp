#include "newsgram/metrics/trend.hpp"

#include <cmath>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "newsgram/errors.hpp"
#include "newsgram/ngram/export.hpp"

namespace newsgram::metrics {

double t_test_p_value(double t, double df) {
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    boost::math::students_t dist(df);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
    return std::min(1.0, std::max(0.0, p));
}

TrendFit fit_linear(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DegenerateFit("x and y differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw DegenerateFit("a trend fit needs at least three points");

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw DegenerateFit("all x values are equal");

    TrendFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    // Rounding noise of an exactly linear series is not residual variance.
    if (sse <= 1e-24 * std::max(syy, 1.0)) sse = 0;
    const double df = static_cast<double>(n - 2);
    fit.slope_se = std::sqrt(sse / df / sxx);
    if (fit.slope_se > 0) {
        fit.t_stat = fit.slope / fit.slope_se;
        fit.p_value = t_test_p_value(*fit.t_stat, df);
    } else if (fit.slope == 0) {
        fit.t_stat = 0.0;
        fit.p_value = 1.0;
    } else {
        fit.perfect_fit = true;
    }
    return fit;
}

TrendFit fit_linear_trend(std::span<const std::pair<Date, double>> series) {
    std::vector<double> x, y;
    x.reserve(series.size());
    y.reserve(series.size());
    for (const auto& [d, v] : series) {
        x.push_back(static_cast<double>(days_between(series.front().first, d)));
        y.push_back(v);
    }
    return fit_linear(x, y);
}

std::vector<WeekMean> weekly_mean(std::span<const std::pair<Date, double>> series, Date corpus_start) {
    std::map<int, std::pair<double, std::size_t>> acc;
    for (const auto& [d, v] : series) {
        auto& [sum, n] = acc[ngram::week_index(corpus_start, d)];
        sum += v;
        ++n;
    }
    std::vector<WeekMean> out;
    for (const auto& [week, sn] : acc)
        out.push_back({week, ngram::week_start(corpus_start, week), sn.first / static_cast<double>(sn.second), sn.second});
    return out;
}

}  // namespace newsgram::metrics
