#pragma once

#include <optional>
#include <span>
#include <vector>

namespace newsgram::query {

inline constexpr int kMinWindow = 1;
inline constexpr int kMaxWindow = 14;

/// Centered moving average. A window of w covers w/2 earlier and (w-1)/2
/// later positions, so even windows lean toward earlier dates. Positions
/// without a full window inside the series are empty. Throws InvalidQuery
/// for w < 1.
std::vector<std::optional<double>> rolling_mean(std::span<const double> values, int window);

}  // namespace newsgram::query
