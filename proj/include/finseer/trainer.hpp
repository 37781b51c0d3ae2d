#pragma once

#include "finseer/nnet.hpp"
#include "finseer/windows.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace finseer {

struct TrainConfig {
    double eta = 0.25;             // learning rate
    int epochs = 1000;             // epochs per pass
    int repeats = 2;               // full passes of the epoch schedule, weights carried over
    std::uint64_t seed = 1;        // weight init / shuffle stream
    std::optional<double> goal_mse; // early stop once epoch MSE reaches this
    bool shuffle = false;          // false: chronological visit order (fully deterministic)

    void validate() const; // throws ParameterError
};

struct TrainReport {
    std::vector<double> mse_curve; // one entry per epoch actually run
    int final_epoch = 0;
    bool stopped_early = false;
};

// delta_k = O_k (1 - O_k) (T_k - O_k)
double output_delta(double o_k, double t_k);

// delta_h = O_h (1 - O_h) * sum over downstream (w_hk * delta_k)
double hidden_delta(double o_h, std::span<const std::pair<double, double>> downstream);

// w <- w + eta * delta_j * x_i (a bias is a weight with x_i = 1)
double apply_update(double w, double eta, double delta_j, double x_i);

// Err = 1/2 (target - output)^2
double example_error(double target, double output);

// Per-layer deltas for a scalar-target example, computed output-to-input from
// the current weights. Layer l of the result belongs to weights[l].
std::vector<std::vector<double>> backprop_deltas(const MlpNetwork& net, const ForwardPass& fwd,
                                                 double target);

// One strictly online step: forward pass, deltas, in-place weight update.
// Returns the example's pre-update Err. Throws DivergenceError when an
// activation or updated weight is no longer finite (eta too large) and
// ShapeError when the network does not have a single output unit.
double train_example(MlpNetwork& net, std::span<const double> input, double target, double eta);

// TDRNN step: the delayed window plus the current context is treated as a
// constant input (truncated depth-1 backprop); after the core update the
// context is overwritten with this step's leading hidden activations.
double train_example(TdrnnNetwork& net, std::span<const FeatureVector> window, double target,
                     double eta);

// Online training over parallel input/target sequences. Runs
// config.repeats passes of config.epochs epochs; each epoch visits every
// example (chronologically unless shuffle) through train_example and records
// the mean of the pre-update errors.
TrainReport train(MlpNetwork& net, std::span<const std::vector<double>> inputs,
                  std::span<const double> targets, const TrainConfig& config);

TrainReport train(MlpNetwork& net, const WindowView& view, const TrainConfig& config);

// TDRNN training: context reset at each epoch start, tapped-delay window
// sliding chronologically. Shuffling is rejected (the context stream orders
// the examples).
TrainReport train(TdrnnNetwork& net, const WindowView& view, const TrainConfig& config);

// Compares the backprop gradient of Err against central finite differences
// for every weight and bias; returns the maximum discrepancy (relative where
// either magnitude reaches 1e-8, absolute below that).
// epsilon must lie in [1e-7, 1e-3].
double gradient_check(const MlpNetwork& net, std::span<const double> input, double target,
                      double epsilon = 1e-5);

// Single-step TDRNN check with the context frozen as a constant input.
double gradient_check(const TdrnnNetwork& net, std::span<const FeatureVector> window,
                      double target, double epsilon = 1e-5);

} // namespace finseer
