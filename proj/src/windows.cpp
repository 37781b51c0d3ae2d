#include "finseer/windows.hpp"

#include "finseer/errors.hpp"

#include <cmath>
#include <string>

namespace finseer {

SupervisedWindowSet build_windows(const SeriesDataset& dataset, const Normalizer& normalizer,
                                  int lead) {
    if (lead < 1) throw ParameterError("lead must be >= 1 day");
    const std::size_t len = dataset.records.size();
    if (len < static_cast<std::size_t>(lead) + 1) {
        throw LengthError("dataset of " + std::to_string(len) +
                          " records is too short for lead " + std::to_string(lead) +
                          " (need at least " + std::to_string(lead + 1) + ")");
    }

    SupervisedWindowSet out;
    out.lead = lead;
    const std::size_t n = len - static_cast<std::size_t>(lead);
    out.inputs.reserve(n);
    out.targets.reserve(n);
    out.raw_targets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const OhlcvRecord& day = dataset.records[i];
        FeatureVector fv;
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            fv[f] = normalize(normalizer, static_cast<Feature>(f),
                              feature_value(day, static_cast<Feature>(f)));
        }
        out.inputs.push_back(fv);
        const double raw_open = dataset.records[i + lead].open;
        out.raw_targets.push_back(raw_open);
        out.targets.push_back(normalize(normalizer, Feature::open, raw_open));
    }
    out.split_index = static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(n)));
    return out;
}

SplitViews split(const SupervisedWindowSet& windows, double ratio) {
    if (!(ratio > 0) || !(ratio < 1)) throw ParameterError("split ratio must be in (0, 1)");
    const std::size_t n = windows.size();
    if (n == 0) throw ParameterError("cannot split an empty window set");
    const auto idx = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
    if (idx == 0 || idx >= n) {
        throw SplitError("split of " + std::to_string(n) + " pairs at ratio " +
                         std::to_string(ratio) + " leaves an empty side");
    }
    return {WindowView{&windows, 0, idx}, WindowView{&windows, idx, n}};
}

std::vector<FeatureVector> delay_window(const SupervisedWindowSet& windows, std::size_t i,
                                        int depth) {
    if (depth < 1) throw ParameterError("delay depth must be >= 1");
    if (i >= windows.size()) throw ParameterError("pair index out of range");
    std::vector<FeatureVector> out;
    out.reserve(static_cast<std::size_t>(depth));
    for (int k = depth - 1; k >= 0; --k) {
        const auto j = (static_cast<std::size_t>(k) <= i) ? i - static_cast<std::size_t>(k) : 0;
        out.push_back(windows.inputs[j]);
    }
    return out;
}

} // namespace finseer
