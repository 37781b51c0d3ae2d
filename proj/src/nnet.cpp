#include "finseer/nnet.hpp"

#include "finseer/errors.hpp"
#include "finseer/rng.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace finseer {

double sigmoid(double x) {
    double y;
    if (x >= 0) {
        y = 1.0 / (1.0 + std::exp(-x));
    } else {
        const double e = std::exp(x);
        y = e / (1.0 + e);
    }
    if (y >= 1.0) y = std::nextafter(1.0, 0.0);
    if (y <= 0.0) y = std::numeric_limits<double>::denorm_min();
    return y;
}

MlpNetwork MlpNetwork::make(std::vector<int> layer_sizes) {
    if (layer_sizes.size() < 2) {
        throw ParameterError("network needs at least an input and an output layer");
    }
    for (int s : layer_sizes) {
        if (s < 1) throw ParameterError("every layer needs at least one unit");
    }
    MlpNetwork net;
    net.layer_sizes = std::move(layer_sizes);
    const std::size_t layers = net.layer_sizes.size() - 1;
    net.weights.resize(layers);
    net.biases.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const auto units = static_cast<std::size_t>(net.layer_sizes[l + 1]);
        const auto prev = static_cast<std::size_t>(net.layer_sizes[l]);
        net.weights[l].assign(units, std::vector<double>(prev, 0.0));
        net.biases[l].assign(units, 0.0);
    }
    return net;
}

void init_weights(MlpNetwork& net, std::uint64_t seed, double half_range) {
    if (!(half_range > 0)) throw ParameterError("init half_range must be > 0");
    UniformRng rng(seed);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        for (auto& row : net.weights[l]) {
            for (double& w : row) w = rng.uniform(-half_range, half_range);
        }
        for (double& b : net.biases[l]) b = rng.uniform(-half_range, half_range);
    }
}

ForwardPass forward_mlp(const MlpNetwork& net, std::span<const double> input) {
    if (input.size() != static_cast<std::size_t>(net.input_size())) {
        throw ShapeError("input of length " + std::to_string(input.size()) +
                         " fed to network with input width " +
                         std::to_string(net.input_size()));
    }
    ForwardPass fwd;
    fwd.activations.reserve(net.layer_sizes.size());
    fwd.activations.emplace_back(input.begin(), input.end());
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const std::vector<double>& prev = fwd.activations.back();
        std::vector<double> act(net.weights[l].size());
        for (std::size_t j = 0; j < act.size(); ++j) {
            double sum = net.biases[l][j];
            const std::vector<double>& row = net.weights[l][j];
            for (std::size_t i = 0; i < row.size(); ++i) sum += row[i] * prev[i];
            act[j] = sigmoid(sum);
        }
        fwd.activations.push_back(std::move(act));
    }
    return fwd;
}

TdrnnNetwork TdrnnNetwork::make(int delay_depth, int context_size,
                                std::vector<int> hidden_sizes) {
    if (delay_depth < 1) throw ParameterError("delay depth must be >= 1");
    if (hidden_sizes.empty()) throw ParameterError("tdrnn needs at least one hidden layer");
    if (context_size < 1) throw ParameterError("context size must be >= 1");
    if (context_size > hidden_sizes.front()) {
        throw ParameterError("context size " + std::to_string(context_size) +
                             " exceeds first hidden layer size " +
                             std::to_string(hidden_sizes.front()));
    }

    TdrnnNetwork net;
    net.delay_depth = delay_depth;
    net.context_size = context_size;
    std::vector<int> sizes;
    sizes.push_back(static_cast<int>(kFeatureCount) * delay_depth + context_size);
    for (int h : hidden_sizes) sizes.push_back(h);
    sizes.push_back(1);
    net.core = MlpNetwork::make(std::move(sizes));
    net.context_state.assign(static_cast<std::size_t>(context_size), 0.5);
    return net;
}

void init_weights(TdrnnNetwork& net, std::uint64_t seed, double half_range) {
    init_weights(net.core, seed, half_range);
}

void reset_context(TdrnnNetwork& net) {
    net.context_state.assign(net.context_state.size(), 0.5);
}

std::vector<double> assemble_tdrnn_input(const TdrnnNetwork& net,
                                         std::span<const FeatureVector> window) {
    if (window.size() != static_cast<std::size_t>(net.delay_depth)) {
        throw ShapeError("tdrnn window has " + std::to_string(window.size()) +
                         " rows, expected delay depth " + std::to_string(net.delay_depth));
    }
    std::vector<double> input;
    input.reserve(window.size() * kFeatureCount + net.context_state.size());
    for (const FeatureVector& row : window) input.insert(input.end(), row.begin(), row.end());
    input.insert(input.end(), net.context_state.begin(), net.context_state.end());
    return input;
}

ForwardPass forward_tdrnn(TdrnnNetwork& net, std::span<const FeatureVector> window) {
    const std::vector<double> input = assemble_tdrnn_input(net, window);
    ForwardPass fwd = forward_mlp(net.core, input);
    const std::vector<double>& hidden = fwd.activations[1];
    for (std::size_t c = 0; c < net.context_state.size(); ++c) net.context_state[c] = hidden[c];
    return fwd;
}

} // namespace finseer
