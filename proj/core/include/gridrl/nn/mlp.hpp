#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gridrl::nn {

enum class Activation : std::uint8_t { Identity = 0, Tanh = 1 };

// Fully connected network with tanh hidden layers and a flat parameter
// vector. Layout per layer l: weights (out x in, row-major), then biases.
// Weights initialize uniform in +/- 1/sqrt(fan_in); biases start at zero.
struct Mlp {
  std::vector<int> layer_sizes;  // [in, hidden..., out]
  Activation output_activation = Activation::Identity;
  std::vector<double> params;

  static Mlp create(std::vector<int> layer_sizes, Activation output_activation,
                    std::uint64_t seed);
  static Mlp zeros(std::vector<int> layer_sizes, Activation output_activation);

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  std::size_t layer_count() const { return layer_sizes.size() - 1; }
  std::size_t param_count() const;

  std::vector<double> forward(std::span<const double> input) const;
};

// Reusable activations buffer: act[0] is the input, act[l] the output of
// layer l. Filled by forward(), consumed by backward_accumulate().
struct MlpWorkspace {
  std::vector<std::vector<double>> act;
  std::vector<double> delta;
  std::vector<double> delta_prev;
};

void forward(const Mlp& net, std::span<const double> input, MlpWorkspace& ws);

// Gradients of Loss = dot(upstream, output) with respect to the parameters
// and to the input (the input gradient feeds actor updates through a critic).
struct BackwardResult {
  std::vector<double> param_gradient;
  std::vector<double> input_gradient;
};

BackwardResult backward(const Mlp& net, std::span<const double> input,
                        std::span<const double> upstream);

// Batch form: requires ws filled by a matching forward() call. Accumulates
// into param_grad (length param_count). input_grad may be empty (skipped) or
// of input_dim length; it is overwritten, not accumulated.
void backward_accumulate(const Mlp& net, MlpWorkspace& ws,
                         std::span<const double> upstream,
                         std::span<double> param_grad,
                         std::span<double> input_grad);

}  // namespace gridrl::nn
