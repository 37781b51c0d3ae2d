#include "finseer/hurst.hpp"

#include "finseer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace finseer {

namespace {

// Mean rescaled range over the non-degenerate chunks of size n, or 0 when
// every chunk was constant.
double mean_rescaled_range(std::span<const double> values, int n) {
    const std::size_t chunks = values.size() / static_cast<std::size_t>(n);
    double acc = 0;
    std::size_t used = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::span<const double> chunk = values.subspan(c * n, n);

        auto [lo, hi] = std::minmax_element(chunk.begin(), chunk.end());
        if (*lo == *hi) continue; // constant chunk: S = 0, skip

        double mean = 0;
        for (double x : chunk) mean += x;
        mean /= n;

        double var = 0;
        double cum = 0, cum_min = 0, cum_max = 0;
        bool first = true;
        for (double x : chunk) {
            const double dev = x - mean;
            var += dev * dev;
            cum += dev;
            if (first) {
                cum_min = cum_max = cum;
                first = false;
            } else {
                cum_min = std::min(cum_min, cum);
                cum_max = std::max(cum_max, cum);
            }
        }
        var /= n; // population form

        acc += (cum_max - cum_min) / std::sqrt(var);
        ++used;
    }
    return used == 0 ? 0.0 : acc / static_cast<double>(used);
}

double ols_slope(const std::vector<std::pair<double, double>>& pts) {
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

} // namespace

const char* to_string(HurstResult::Class c) {
    switch (c) {
        case HurstResult::Class::anti_persistent: return "anti-persistent";
        case HurstResult::Class::random: return "random";
        case HurstResult::Class::persistent: return "persistent";
    }
    return "?";
}

std::vector<int> default_window_sizes(std::size_t len) {
    std::vector<int> sizes;
    for (std::size_t n = 16; n <= len / 4; n *= 2) sizes.push_back(static_cast<int>(n));
    return sizes;
}

HurstResult rs_hurst(std::span<const double> values, std::vector<int> window_sizes,
                     double band) {
    std::sort(window_sizes.begin(), window_sizes.end());
    window_sizes.erase(std::unique(window_sizes.begin(), window_sizes.end()),
                       window_sizes.end());

    if (window_sizes.size() < 3) {
        throw ParameterError("rs_hurst needs at least 3 distinct window sizes");
    }
    if (window_sizes.front() < 8) {
        throw ParameterError("rs_hurst window sizes must be >= 8");
    }
    if (!(band >= 0)) throw ParameterError("classification band must be >= 0");
    const auto max_size = static_cast<std::size_t>(window_sizes.back());
    if (values.size() < 2 * max_size) {
        throw LengthError("series of length " + std::to_string(values.size()) +
                          " is too short for window size " + std::to_string(max_size) +
                          " (need at least " + std::to_string(2 * max_size) + ")");
    }

    HurstResult result;
    for (int n : window_sizes) {
        double rs = mean_rescaled_range(values, n);
        if (rs <= 0) continue; // every chunk of this size was constant
        result.points.emplace_back(std::log(static_cast<double>(n)), std::log(rs));
    }
    if (result.points.size() < 3) {
        throw DegenerateError("series is degenerate (constant or near-constant chunks); "
                              "cannot fit R/S line");
    }

    result.h = ols_slope(result.points);
    if (result.h < 0.5 - band) {
        result.classification = HurstResult::Class::anti_persistent;
    } else if (result.h > 0.5 + band) {
        result.classification = HurstResult::Class::persistent;
    } else {
        result.classification = HurstResult::Class::random;
    }
    return result;
}

bool screen_predictability(const HurstResult& result) { return result.h > 0.5; }

} // namespace finseer
