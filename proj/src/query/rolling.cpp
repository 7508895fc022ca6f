#include "newsgram/query/rolling.hpp"

#include "newsgram/errors.hpp"

namespace newsgram::query {

std::vector<std::optional<double>> rolling_mean(std::span<const double> values, int window) {
    if (window < 1) throw InvalidQuery("window must be at least 1");
    const std::size_t n = values.size();
    const std::size_t before = static_cast<std::size_t>(window) / 2;
    const std::size_t after = static_cast<std::size_t>(window - 1) / 2;
    std::vector<std::optional<double>> out(n);
    for (std::size_t i = before; i + after < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = i - before; j <= i + after; ++j) sum += values[j];
        out[i] = sum / static_cast<double>(window);
    }
    return out;
}

}  // namespace newsgram::query
