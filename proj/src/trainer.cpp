#include "finseer/trainer.hpp"

#include "finseer/errors.hpp"
#include "finseer/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace finseer {

void TrainConfig::validate() const {
    if (!(eta > 0)) throw ParameterError("learning rate eta must be > 0");
    if (epochs < 1) throw ParameterError("epochs must be >= 1");
    if (repeats < 1) throw ParameterError("repeats must be >= 1");
    if (goal_mse && std::isnan(*goal_mse)) throw ParameterError("goal_mse must not be NaN");
}

double output_delta(double o_k, double t_k) { return o_k * (1.0 - o_k) * (t_k - o_k); }

double hidden_delta(double o_h, std::span<const std::pair<double, double>> downstream) {
    double sum = 0;
    for (auto [w, d] : downstream) sum += w * d;
    return o_h * (1.0 - o_h) * sum;
}

double apply_update(double w, double eta, double delta_j, double x_i) {
    return w + eta * delta_j * x_i;
}

double example_error(double target, double output) {
    const double diff = target - output;
    return 0.5 * diff * diff;
}

std::vector<std::vector<double>> backprop_deltas(const MlpNetwork& net, const ForwardPass& fwd,
                                                 double target) {
    if (net.output_size() != 1) {
        throw ShapeError("scalar-target training needs an output layer of width 1, got " +
                         std::to_string(net.output_size()));
    }
    const std::size_t layers = net.weights.size();
    std::vector<std::vector<double>> deltas(layers);

    const double o_k = fwd.output();
    deltas[layers - 1] = {output_delta(o_k, target)};

    for (std::size_t l = layers - 1; l-- > 0;) {
        const std::vector<std::vector<double>>& w_next = net.weights[l + 1];
        const std::vector<double>& o = fwd.activations[l + 1];
        std::vector<double>& d = deltas[l];
        d.resize(o.size());
        for (std::size_t h = 0; h < o.size(); ++h) {
            double sum = 0;
            for (std::size_t k = 0; k < w_next.size(); ++k) {
                sum += w_next[k][h] * deltas[l + 1][k];
            }
            d[h] = o[h] * (1.0 - o[h]) * sum;
        }
    }
    return deltas;
}

namespace {

void apply_updates(MlpNetwork& net, const ForwardPass& fwd,
                   const std::vector<std::vector<double>>& deltas, double eta) {
    bool finite = true;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const std::vector<double>& x = fwd.activations[l];
        for (std::size_t j = 0; j < net.weights[l].size(); ++j) {
            const double d = deltas[l][j];
            std::vector<double>& row = net.weights[l][j];
            for (std::size_t i = 0; i < row.size(); ++i) {
                row[i] = apply_update(row[i], eta, d, x[i]);
                finite &= std::isfinite(row[i]);
            }
            net.biases[l][j] = apply_update(net.biases[l][j], eta, d, 1.0);
            finite &= std::isfinite(net.biases[l][j]);
        }
    }
    if (!finite) {
        throw DivergenceError("non-finite weight after update (eta may be too large)");
    }
}

double online_step(MlpNetwork& net, std::span<const double> input, double target, double eta) {
    const ForwardPass fwd = forward_mlp(net, input);
    if (!std::isfinite(fwd.output())) {
        throw DivergenceError("non-finite activation in forward pass (eta may be too large)");
    }
    const double err = example_error(target, fwd.output());
    const auto deltas = backprop_deltas(net, fwd, target);
    apply_updates(net, fwd, deltas, eta);
    return err;
}

// Shared epoch schedule. step(i) runs one online update for example i and
// returns its pre-update error; on_epoch_start is the TDRNN context reset.
template <typename StepFn, typename EpochStartFn>
TrainReport run_schedule(std::size_t count, const TrainConfig& cfg, bool allow_shuffle,
                         EpochStartFn&& on_epoch_start, StepFn&& step) {
    cfg.validate();
    if (count == 0) throw ParameterError("training set is empty");
    if (cfg.shuffle && !allow_shuffle) {
        throw ParameterError("shuffle is not supported for tdrnn training "
                             "(context follows the chronological order)");
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    UniformRng shuffle_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

    TrainReport report;
    report.mse_curve.reserve(static_cast<std::size_t>(cfg.epochs) *
                             static_cast<std::size_t>(cfg.repeats));
    for (int pass = 0; pass < cfg.repeats && !report.stopped_early; ++pass) {
        for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
            if (cfg.shuffle) {
                for (std::size_t i = count; i > 1; --i) {
                    std::swap(order[i - 1], order[shuffle_rng.index(i)]);
                }
            }
            on_epoch_start();
            double err_sum = 0;
            for (std::size_t i : order) err_sum += step(i);
            report.mse_curve.push_back(err_sum / static_cast<double>(count));
            if (cfg.goal_mse && report.mse_curve.back() <= *cfg.goal_mse) {
                report.stopped_early = true;
                break;
            }
        }
    }
    report.final_epoch = static_cast<int>(report.mse_curve.size());
    return report;
}

} // namespace

double train_example(MlpNetwork& net, std::span<const double> input, double target,
                     double eta) {
    return online_step(net, input, target, eta);
}

double train_example(TdrnnNetwork& net, std::span<const FeatureVector> window, double target,
                     double eta) {
    const std::vector<double> input = assemble_tdrnn_input(net, window);
    const ForwardPass fwd = forward_mlp(net.core, input);
    if (!std::isfinite(fwd.output())) {
        throw DivergenceError("non-finite activation in forward pass (eta may be too large)");
    }
    const double err = example_error(target, fwd.output());
    const auto deltas = backprop_deltas(net.core, fwd, target);
    apply_updates(net.core, fwd, deltas, eta);
    // Elman copy-back from this step's (pre-update) forward pass.
    const std::vector<double>& hidden = fwd.activations[1];
    for (std::size_t c = 0; c < net.context_state.size(); ++c) net.context_state[c] = hidden[c];
    return err;
}

TrainReport train(MlpNetwork& net, std::span<const std::vector<double>> inputs,
                  std::span<const double> targets, const TrainConfig& config) {
    if (inputs.size() != targets.size()) {
        throw ShapeError("inputs and targets differ in length");
    }
    return run_schedule(
        inputs.size(), config, /*allow_shuffle=*/true, [] {},
        [&](std::size_t i) { return online_step(net, inputs[i], targets[i], config.eta); });
}

TrainReport train(MlpNetwork& net, const WindowView& view, const TrainConfig& config) {
    if (!view.set || view.empty()) throw ParameterError("training set is empty");
    const SupervisedWindowSet& set = *view.set;
    return run_schedule(
        view.size(), config, /*allow_shuffle=*/true, [] {},
        [&](std::size_t i) {
            const std::size_t k = view.first + i;
            return online_step(net, set.inputs[k], set.targets[k], config.eta);
        });
}

TrainReport train(TdrnnNetwork& net, const WindowView& view, const TrainConfig& config) {
    if (!view.set || view.empty()) throw ParameterError("training set is empty");
    const SupervisedWindowSet& set = *view.set;
    return run_schedule(
        view.size(), config, /*allow_shuffle=*/false, [&] { reset_context(net); },
        [&](std::size_t i) {
            const std::size_t k = view.first + i;
            const auto window = delay_window(set, k, net.delay_depth);
            return train_example(net, window, set.targets[k], config.eta);
        });
}

double gradient_check(const MlpNetwork& net, std::span<const double> input, double target,
                      double epsilon) {
    if (!(epsilon >= 1e-7 && epsilon <= 1e-3)) {
        throw ParameterError("gradient check epsilon must lie in [1e-7, 1e-3]");
    }

    const ForwardPass fwd = forward_mlp(net, input);
    const auto deltas = backprop_deltas(net, fwd, target);

    MlpNetwork probe = net;
    const auto err_at = [&](double* w, double value) {
        const double saved = *w;
        *w = value;
        const double err = example_error(target, forward_mlp(probe, input).output());
        *w = saved;
        return err;
    };

    double max_disc = 0;
    const auto account = [&](double analytic, double* w) {
        const double base = *w;
        const double fd =
            (err_at(w, base + epsilon) - err_at(w, base - epsilon)) / (2.0 * epsilon);
        const double mag = std::max(std::fabs(analytic), std::fabs(fd));
        const double disc =
            mag < 1e-8 ? std::fabs(analytic - fd) : std::fabs(analytic - fd) / mag;
        max_disc = std::max(max_disc, disc);
    };

    for (std::size_t l = 0; l < probe.weights.size(); ++l) {
        const std::vector<double>& x = fwd.activations[l];
        for (std::size_t j = 0; j < probe.weights[l].size(); ++j) {
            // dErr/dw = -delta_j * x_i; the update +eta*delta*x descends it.
            for (std::size_t i = 0; i < probe.weights[l][j].size(); ++i) {
                account(-deltas[l][j] * x[i], &probe.weights[l][j][i]);
            }
            account(-deltas[l][j], &probe.biases[l][j]);
        }
    }
    return max_disc;
}

double gradient_check(const TdrnnNetwork& net, std::span<const FeatureVector> window,
                      double target, double epsilon) {
    const std::vector<double> input = assemble_tdrnn_input(net, window);
    return gradient_check(net.core, input, target, epsilon);
}

} // namespace finseer
