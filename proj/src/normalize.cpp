#include "finseer/normalize.hpp"

#include "finseer/errors.hpp"

#include <algorithm>
#include <string>

namespace finseer {

const char* feature_name(Feature f) {
    switch (f) {
        case Feature::open: return "open";
        case Feature::high: return "high";
        case Feature::low: return "low";
        case Feature::close: return "close";
        case Feature::volume: return "volume";
    }
    return "?";
}

double feature_value(const OhlcvRecord& r, Feature f) {
    switch (f) {
        case Feature::open: return r.open;
        case Feature::high: return r.high;
        case Feature::low: return r.low;
        case Feature::close: return r.close;
        case Feature::volume: return r.volume;
    }
    return 0;
}

Normalizer fit_normalizer(const SeriesDataset& dataset, double lo, double hi) {
    if (dataset.records.empty()) {
        throw ParameterError("cannot fit normalizer on an empty dataset");
    }
    if (!(lo < hi) || !(lo > 0) || !(hi < 1)) {
        throw ParameterError("normalizer range must satisfy 0 < lo < hi < 1");
    }

    Normalizer n;
    n.lo = lo;
    n.hi = hi;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const auto f = static_cast<Feature>(i);
        double mn = feature_value(dataset.records.front(), f);
        double mx = mn;
        for (const OhlcvRecord& r : dataset.records) {
            double v = feature_value(r, f);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        if (mn == mx) {
            throw DegenerateError(std::string("feature '") + feature_name(f) +
                                  "' is constant; cannot normalize");
        }
        n.min[i] = mn;
        n.max[i] = mx;
    }
    return n;
}

double normalize(const Normalizer& n, Feature f, double x) {
    const auto i = static_cast<std::size_t>(f);
    return n.lo + (x - n.min[i]) * (n.hi - n.lo) / (n.max[i] - n.min[i]);
}

double denormalize(const Normalizer& n, Feature f, double y) {
    const auto i = static_cast<std::size_t>(f);
    return n.min[i] + (y - n.lo) * (n.max[i] - n.min[i]) / (n.hi - n.lo);
}

} // namespace finseer
