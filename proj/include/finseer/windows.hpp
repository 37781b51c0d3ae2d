#pragma once

#include "finseer/normalize.hpp"
#include "finseer/ohlcv.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace finseer {

using FeatureVector = std::array<double, kFeatureCount>;

// Aligned supervised pairs: inputs[i] holds the normalized features of day i,
// targets[i] the normalized open of day i+lead. raw_targets keeps the
// unnormalized open of day i+lead so the pipeline never loses the original
// price to normalization round-off.
struct SupervisedWindowSet {
    std::vector<FeatureVector> inputs;
    std::vector<double> targets;
    std::vector<double> raw_targets;
    int lead = 730;
    std::size_t split_index = 0; // floor(0.8 * size) at construction

    std::size_t size() const { return inputs.size(); }
};

// Half-open index range [first, last) into a SupervisedWindowSet.
struct WindowView {
    const SupervisedWindowSet* set = nullptr;
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const { return last - first; }
    bool empty() const { return first == last; }
};

struct SplitViews {
    WindowView train;
    WindowView test;
};

// Builds (len - lead) pairs from a dataset. Throws ParameterError for
// lead < 1 and LengthError when the dataset is shorter than lead + 1.
SupervisedWindowSet build_windows(const SeriesDataset& dataset, const Normalizer& normalizer,
                                  int lead = 730);

// Chronological split: first floor(ratio * n) pairs train, rest test.
// Throws ParameterError unless 0 < ratio < 1 and SplitError when either side
// would be empty.
SplitViews split(const SupervisedWindowSet& windows, double ratio = 0.8);

// Tapped-delay window of the `depth` most recent feature vectors ending at
// pair index i, oldest row first; the sequence start is padded by repeating
// the earliest row.
std::vector<FeatureVector> delay_window(const SupervisedWindowSet& windows, std::size_t i,
                                        int depth);

} // namespace finseer
