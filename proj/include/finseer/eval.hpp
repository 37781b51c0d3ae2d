#pragma once

#include "finseer/nnet.hpp"
#include "finseer/normalize.hpp"
#include "finseer/trainer.hpp"
#include "finseer/windows.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace finseer {

// Ordinary least squares of predicted (y) on target (x) plus the Pearson
// correlation. degenerate is set when y is constant (r forced to 0).
struct RegressionFit {
    double slope = 0;
    double intercept = 0;
    double r = 0;
    bool degenerate = false;
};

// Throws ParameterError for mismatched or too-short sequences and
// DegenerateError when x is constant.
RegressionFit linear_regression(std::span<const double> x, std::span<const double> y);

struct PricePair {
    double target = 0;    // price units
    double predicted = 0; // price units
};

struct EvalReport {
    double mse = 0;                 // mean of 1/2 (t - p)^2 over the pair values
    double rmse_pct = 0;            // 100 * sqrt(mean((t - p)^2)) / mean(t)
    std::optional<double> mape;     // 100 * mean(|t - p| / |t|); absent when a target is 0
    RegressionFit fit;              // predicted on target
    std::vector<PricePair> pairs;
    int out_of_range = 0;           // predictions outside the fitted feature range
};

// Metrics over (target, predicted) pairs as given. Throws LengthError for
// fewer than 2 pairs. A zero target disables mape instead of aborting.
EvalReport evaluate(std::vector<PricePair> pairs);

// Pipeline variant: mse is computed on normalized values (both sides mapped
// through the open-price normalizer) and predictions outside the fitted open
// range are counted in out_of_range. The remaining metrics are unchanged;
// the pair-to-report pipeline itself is normalizer-range agnostic.
EvalReport evaluate(std::vector<PricePair> pairs, const Normalizer& normalizer);

// Forward pass per pair over the view, denormalized to price units. Targets
// come from the window set's raw targets, so they match the source records
// exactly.
std::vector<PricePair> predict_series(const MlpNetwork& net, const WindowView& view,
                                      const Normalizer& normalizer);

// TDRNN variant: the context is reset and warmed by replaying the up to
// delay_depth + 1 window steps immediately preceding the view, preserving
// state continuity across the train/test boundary.
std::vector<PricePair> predict_series(TdrnnNetwork& net, const WindowView& view,
                                      const Normalizer& normalizer);

struct ArchReports {
    std::string arch; // "mlp" or "tdrnn"
    EvalReport train;
    EvalReport test;
};

struct ComparisonRow {
    std::string set;  // "train" or "test"
    std::string arch; // "mlp" or "tdrnn"
    double rmse_pct = 0;
    std::optional<double> mape;
};

struct Comparison {
    std::vector<ComparisonRow> rows; // train x {mlp,tdrnn}, test x {mlp,tdrnn}
    std::string winner;              // "mlp", "tdrnn" or "tie" (by test rmse_pct)

    std::string to_csv() const;  // header set,arch,rmse_pct,mape
    std::string to_text() const; // aligned table plus the winner line
};

// Side-by-side error table. Throws ComparisonError when the reports do not
// come from the same window split (mismatched pair counts).
Comparison compare(const ArchReports& mlp, const ArchReports& tdrnn);

} // namespace finseer
