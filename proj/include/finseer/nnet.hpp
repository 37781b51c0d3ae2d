#pragma once

#include "finseer/windows.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace finseer {

// Logistic activation 1/(1+e^-x), computed in the numerically stable branch
// form and nudged off the exact 0/1 endpoints so outputs stay strictly
// inside (0,1) even for saturating inputs.
double sigmoid(double x);

// Derivative expressed through the output: f'(x) = o(1-o).
inline double sigmoid_deriv(double o) { return o * (1.0 - o); }

// Fully connected sigmoid network. weights[l][j][i] connects unit i of layer
// l to unit j of layer l+1; biases[l][j] belongs to unit j of layer l+1.
// Plain value type: copies are independent networks.
struct MlpNetwork {
    std::vector<int> layer_sizes;
    std::vector<std::vector<std::vector<double>>> weights;
    std::vector<std::vector<double>> biases;

    // Zero-initialized network of the given layout (input, hidden..., output).
    static MlpNetwork make(std::vector<int> layer_sizes);

    int input_size() const { return layer_sizes.front(); }
    int output_size() const { return layer_sizes.back(); }
};

// All layer activations of one forward pass; activations[0] is the input.
struct ForwardPass {
    std::vector<std::vector<double>> activations;

    double output() const { return activations.back().front(); }
};

// Draws every weight and bias iid uniform on [-half_range, +half_range] from
// a deterministic seeded stream: identical seed, identical network.
void init_weights(MlpNetwork& net, std::uint64_t seed, double half_range = 0.5);

// unit j of layer l+1: sigmoid(bias + sum_i w[j][i] * activation_l[i]).
// Throws ShapeError when the input length does not match the input layer.
ForwardPass forward_mlp(const MlpNetwork& net, std::span<const double> input);

// Time-delay recurrent network: a tapped-delay line of the delay_depth most
// recent feature vectors plus context_size Elman context units (a copy of the
// previous step's leading hidden activations) feeding an MLP core.
struct TdrnnNetwork {
    int delay_depth = 1;  // D
    int context_size = 1; // C
    MlpNetwork core;      // input width = kFeatureCount*D + C
    std::vector<double> context_state;

    // Core layout [kFeatureCount*D + C, hidden..., 1]. Throws ParameterError
    // for D < 1, C < 1 or C > first hidden size.
    static TdrnnNetwork make(int delay_depth, int context_size, std::vector<int> hidden_sizes);
};

void init_weights(TdrnnNetwork& net, std::uint64_t seed, double half_range = 0.5);

// Context back to its neutral rest value sigmoid(0) = 0.5. Idempotent.
void reset_context(TdrnnNetwork& net);

// Flattened core input: the D delayed feature vectors (oldest first), then
// the current context. Throws ShapeError unless the window has exactly D rows.
std::vector<double> assemble_tdrnn_input(const TdrnnNetwork& net,
                                         std::span<const FeatureVector> window);

// Forward pass over the core followed by the Elman copy-back: context_state
// is overwritten with the first context_size hidden activations of this step.
ForwardPass forward_tdrnn(TdrnnNetwork& net, std::span<const FeatureVector> window);

} // namespace finseer
