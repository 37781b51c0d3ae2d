#include "finseer/eval.hpp"

#include "finseer/errors.hpp"
#include "finseer/ohlcv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace finseer {

RegressionFit linear_regression(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ParameterError("regression sequences differ in length");
    if (x.size() < 2) throw ParameterError("regression needs at least 2 points");

    const auto [x_lo, x_hi] = std::minmax_element(x.begin(), x.end());
    if (*x_lo == *x_hi) throw DegenerateError("regressor (target series) is constant");

    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }

    RegressionFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    const auto [y_lo, y_hi] = std::minmax_element(y.begin(), y.end());
    if (*y_lo == *y_hi) {
        fit.degenerate = true;
        fit.r = 0;
    } else {
        fit.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }
    return fit;
}

namespace {

EvalReport build_report(std::vector<PricePair> pairs) {
    if (pairs.size() < 2) {
        throw LengthError("evaluation needs at least 2 pairs, got " +
                          std::to_string(pairs.size()));
    }

    EvalReport report;
    double sq_sum = 0, target_sum = 0, ape_sum = 0;
    bool mape_ok = true;
    std::vector<double> targets, predictions;
    targets.reserve(pairs.size());
    predictions.reserve(pairs.size());
    for (const PricePair& p : pairs) {
        const double diff = p.target - p.predicted;
        sq_sum += diff * diff;
        target_sum += p.target;
        if (p.target == 0) {
            mape_ok = false;
        } else {
            ape_sum += std::fabs(diff) / std::fabs(p.target);
        }
        targets.push_back(p.target);
        predictions.push_back(p.predicted);
    }
    const double n = static_cast<double>(pairs.size());
    report.mse = 0.5 * sq_sum / n;
    report.rmse_pct = 100.0 * std::sqrt(sq_sum / n) / (target_sum / n);
    if (mape_ok) report.mape = 100.0 * ape_sum / n;
    report.fit = linear_regression(targets, predictions);
    report.pairs = std::move(pairs);
    return report;
}

} // namespace

EvalReport evaluate(std::vector<PricePair> pairs) { return build_report(std::move(pairs)); }

EvalReport evaluate(std::vector<PricePair> pairs, const Normalizer& normalizer) {
    EvalReport report = build_report(std::move(pairs));
    double sum = 0;
    const auto open = static_cast<std::size_t>(Feature::open);
    for (const PricePair& p : report.pairs) {
        sum += example_error(normalize(normalizer, Feature::open, p.target),
                             normalize(normalizer, Feature::open, p.predicted));
        if (p.predicted < normalizer.min[open] || p.predicted > normalizer.max[open]) {
            ++report.out_of_range;
        }
    }
    report.mse = sum / static_cast<double>(report.pairs.size());
    return report;
}

std::vector<PricePair> predict_series(const MlpNetwork& net, const WindowView& view,
                                      const Normalizer& normalizer) {
    if (!view.set || view.empty()) throw ParameterError("prediction view is empty");
    const SupervisedWindowSet& set = *view.set;
    std::vector<PricePair> pairs;
    pairs.reserve(view.size());
    for (std::size_t i = view.first; i < view.last; ++i) {
        const double out = forward_mlp(net, set.inputs[i]).output();
        pairs.push_back({set.raw_targets[i], denormalize(normalizer, Feature::open, out)});
    }
    return pairs;
}

std::vector<PricePair> predict_series(TdrnnNetwork& net, const WindowView& view,
                                      const Normalizer& normalizer) {
    if (!view.set || view.empty()) throw ParameterError("prediction view is empty");
    const SupervisedWindowSet& set = *view.set;

    reset_context(net);
    const auto warmup = static_cast<std::size_t>(net.delay_depth + 1);
    const std::size_t warm_first = view.first > warmup ? view.first - warmup : 0;
    for (std::size_t i = warm_first; i < view.first; ++i) {
        forward_tdrnn(net, delay_window(set, i, net.delay_depth));
    }

    std::vector<PricePair> pairs;
    pairs.reserve(view.size());
    for (std::size_t i = view.first; i < view.last; ++i) {
        const double out = forward_tdrnn(net, delay_window(set, i, net.delay_depth)).output();
        pairs.push_back({set.raw_targets[i], denormalize(normalizer, Feature::open, out)});
    }
    return pairs;
}

namespace {

std::string format_mape(const std::optional<double>& mape) {
    return mape ? format_double(*mape) : std::string();
}

} // namespace

std::string Comparison::to_csv() const {
    std::string out = "set,arch,rmse_pct,mape\n";
    for (const ComparisonRow& row : rows) {
        out += row.set + ',' + row.arch + ',' + format_double(row.rmse_pct) + ',' +
               format_mape(row.mape) + '\n';
    }
    return out;
}

std::string Comparison::to_text() const {
    std::string out = "set    arch    rmse_pct      mape\n";
    char buf[96];
    for (const ComparisonRow& row : rows) {
        char mape_buf[32] = "n/a";
        if (row.mape) std::snprintf(mape_buf, sizeof mape_buf, "%.4f", *row.mape);
        std::snprintf(buf, sizeof buf, "%-6s %-6s %9.4f %9s\n", row.set.c_str(),
                      row.arch.c_str(), row.rmse_pct, mape_buf);
        out += buf;
    }
    out += "winner by test rmse_pct: " + winner + '\n';
    return out;
}

Comparison compare(const ArchReports& mlp, const ArchReports& tdrnn) {
    if (mlp.train.pairs.size() != tdrnn.train.pairs.size() ||
        mlp.test.pairs.size() != tdrnn.test.pairs.size()) {
        throw ComparisonError("reports cover different pair counts; "
                              "both architectures must share the window set and split");
    }

    Comparison cmp;
    cmp.rows = {
        {"train", mlp.arch, mlp.train.rmse_pct, mlp.train.mape},
        {"train", tdrnn.arch, tdrnn.train.rmse_pct, tdrnn.train.mape},
        {"test", mlp.arch, mlp.test.rmse_pct, mlp.test.mape},
        {"test", tdrnn.arch, tdrnn.test.rmse_pct, tdrnn.test.mape},
    };
    if (mlp.test.rmse_pct == tdrnn.test.rmse_pct) {
        cmp.winner = "tie";
    } else {
        cmp.winner = tdrnn.test.rmse_pct < mlp.test.rmse_pct ? tdrnn.arch : mlp.arch;
    }
    return cmp;
}

} // namespace finseer
