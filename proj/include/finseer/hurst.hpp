#pragma once

#include <span>
#include <utility>
#include <vector>

namespace finseer {

// Half-width of the "random" band around H = 0.5 used for classification.
inline constexpr double kHurstClassBand = 0.05;

struct HurstResult {
    enum class Class { anti_persistent, random, persistent };

    double h = 0;                                   // slope of log(mean R/S) on log(n)
    std::vector<std::pair<double, double>> points;  // (log n, log mean R/S), natural logs
    Class classification = Class::random;
};

const char* to_string(HurstResult::Class c);

// Power-of-two window sizes from 16 up to len/4.
std::vector<int> default_window_sizes(std::size_t len);

// Rescaled-range Hurst estimate. For each window size n the series is cut
// into floor(len/n) contiguous chunks; each chunk contributes the range of
// its mean-adjusted cumulative deviations divided by its population standard
// deviation, constant chunks are skipped, and the per-size chunk averages are
// fit by ordinary least squares in log-log space. The slope is H.
//
// Preconditions: at least 3 distinct window sizes, each >= 8, and
// len >= 2 * max(window_sizes). Throws LengthError when the series is too
// short, ParameterError for bad window sizes, and DegenerateError when the
// surviving points cannot support a fit (e.g. a constant series).
HurstResult rs_hurst(std::span<const double> values, std::vector<int> window_sizes,
                     double band = kHurstClassBand);

// Predictability screen: true iff h > 0.5 (strict).
bool screen_predictability(const HurstResult& result);

} // namespace finseer
