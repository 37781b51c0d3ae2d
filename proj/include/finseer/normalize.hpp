#pragma once

#include "finseer/ohlcv.hpp"

#include <array>
#include <cstddef>

namespace finseer {

inline constexpr std::size_t kFeatureCount = 5;

enum class Feature : std::size_t { open = 0, high = 1, low = 2, close = 3, volume = 4 };

const char* feature_name(Feature f);
double feature_value(const OhlcvRecord& r, Feature f);

// Per-feature affine min-max map onto [lo, hi]. The sigmoid output lives in
// (0,1), so the default target range (0.1, 0.9) keeps targets reachable
// without saturating the output unit. Values outside the fitted [min, max]
// map outside [lo, hi]; there is no clamping.
struct Normalizer {
    std::array<double, kFeatureCount> min{};
    std::array<double, kFeatureCount> max{};
    double lo = 0.1;
    double hi = 0.9;
};

// Captures per-feature min/max over the whole dataset.
// Throws ParameterError for an empty dataset or a bad range, DegenerateError
// (naming the feature) when a feature is constant.
Normalizer fit_normalizer(const SeriesDataset& dataset, double lo = 0.1, double hi = 0.9);

double normalize(const Normalizer& n, Feature f, double x);
double denormalize(const Normalizer& n, Feature f, double y);

} // namespace finseer
