#include "gridrl/nn/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "gridrl/util/rng.hpp"

namespace gridrl::nn {

namespace {

void validate_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2)
    throw std::invalid_argument("mlp needs at least input and output sizes");
  for (int s : sizes)
    if (s < 1) throw std::invalid_argument("mlp layer sizes must be >= 1");
}

std::size_t count_params(const std::vector<int>& sizes) {
  std::size_t n = 0;
  for (std::size_t l = 1; l < sizes.size(); ++l)
    n += static_cast<std::size_t>(sizes[l - 1]) * sizes[l] + sizes[l];
  return n;
}

}  // namespace

Mlp Mlp::create(std::vector<int> sizes, Activation output_activation,
                std::uint64_t seed) {
  validate_sizes(sizes);
  Mlp net;
  net.layer_sizes = std::move(sizes);
  net.output_activation = output_activation;
  net.params.assign(count_params(net.layer_sizes), 0.0);

  Rng rng(seed);
  std::size_t offset = 0;
  for (std::size_t l = 1; l < net.layer_sizes.size(); ++l) {
    const int in = net.layer_sizes[l - 1];
    const int out = net.layer_sizes[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (int k = 0; k < in * out; ++k)
      net.params[offset + k] = rng.uniform(-bound, bound);
    offset += static_cast<std::size_t>(in) * out + out;  // biases stay zero
  }
  return net;
}

Mlp Mlp::zeros(std::vector<int> sizes, Activation output_activation) {
  validate_sizes(sizes);
  Mlp net;
  net.layer_sizes = std::move(sizes);
  net.output_activation = output_activation;
  net.params.assign(count_params(net.layer_sizes), 0.0);
  return net;
}

std::size_t Mlp::param_count() const { return count_params(layer_sizes); }

void forward(const Mlp& net, std::span<const double> input, MlpWorkspace& ws) {
  if (static_cast<int>(input.size()) != net.input_dim())
    throw std::invalid_argument("mlp forward: input length mismatch");
  if (net.params.size() != net.param_count())
    throw std::invalid_argument("mlp forward: parameter vector length mismatch");

  const std::size_t layers = net.layer_count();
  ws.act.resize(layers + 1);
  ws.act[0].assign(input.begin(), input.end());

  std::size_t offset = 0;
  for (std::size_t l = 1; l <= layers; ++l) {
    const int in = net.layer_sizes[l - 1];
    const int out = net.layer_sizes[l];
    const double* w = net.params.data() + offset;
    const double* b = w + static_cast<std::size_t>(in) * out;
    const std::vector<double>& x = ws.act[l - 1];
    std::vector<double>& y = ws.act[l];
    y.resize(out);

    const bool apply_tanh =
        (l < layers) || (net.output_activation == Activation::Tanh);
    for (int j = 0; j < out; ++j) {
      double z = b[j];
      const double* wj = w + static_cast<std::size_t>(j) * in;
      for (int i = 0; i < in; ++i) z += wj[i] * x[i];
      y[j] = apply_tanh ? std::tanh(z) : z;
    }
    offset += static_cast<std::size_t>(in) * out + out;
  }
}

std::vector<double> Mlp::forward(std::span<const double> input) const {
  MlpWorkspace ws;
  nn::forward(*this, input, ws);
  return ws.act.back();
}

void backward_accumulate(const Mlp& net, MlpWorkspace& ws,
                         std::span<const double> upstream,
                         std::span<double> param_grad,
                         std::span<double> input_grad) {
  const std::size_t layers = net.layer_count();
  if (ws.act.size() != layers + 1)
    throw std::invalid_argument("mlp backward: workspace not filled by forward()");
  if (static_cast<int>(upstream.size()) != net.output_dim())
    throw std::invalid_argument("mlp backward: upstream length mismatch");
  if (param_grad.size() != net.param_count())
    throw std::invalid_argument("mlp backward: gradient length mismatch");
  if (!input_grad.empty() && static_cast<int>(input_grad.size()) != net.input_dim())
    throw std::invalid_argument("mlp backward: input gradient length mismatch");

  // Per-layer parameter offsets.
  std::vector<std::size_t> offsets(layers + 1, 0);
  for (std::size_t l = 1; l <= layers; ++l)
    offsets[l] = offsets[l - 1] +
                 static_cast<std::size_t>(net.layer_sizes[l - 1]) * net.layer_sizes[l] +
                 net.layer_sizes[l];

  // Output delta: upstream times the output activation derivative.
  ws.delta.assign(upstream.begin(), upstream.end());
  if (net.output_activation == Activation::Tanh) {
    const std::vector<double>& y = ws.act[layers];
    for (std::size_t j = 0; j < ws.delta.size(); ++j)
      ws.delta[j] *= 1.0 - y[j] * y[j];
  }

  for (std::size_t l = layers; l >= 1; --l) {
    const int in = net.layer_sizes[l - 1];
    const int out = net.layer_sizes[l];
    const double* w = net.params.data() + offsets[l - 1];
    double* gw = param_grad.data() + offsets[l - 1];
    double* gb = gw + static_cast<std::size_t>(in) * out;
    const std::vector<double>& x = ws.act[l - 1];

    for (int j = 0; j < out; ++j) {
      const double d = ws.delta[j];
      double* gwj = gw + static_cast<std::size_t>(j) * in;
      for (int i = 0; i < in; ++i) gwj[i] += d * x[i];
      gb[j] += d;
    }

    const bool need_prev = (l > 1) || !input_grad.empty();
    if (!need_prev) break;

    ws.delta_prev.assign(in, 0.0);
    for (int j = 0; j < out; ++j) {
      const double d = ws.delta[j];
      const double* wj = w + static_cast<std::size_t>(j) * in;
      for (int i = 0; i < in; ++i) ws.delta_prev[i] += wj[i] * d;
    }
    if (l > 1) {
      // Hidden layers are tanh.
      for (int i = 0; i < in; ++i) ws.delta_prev[i] *= 1.0 - x[i] * x[i];
      ws.delta = ws.delta_prev;
    } else {
      for (int i = 0; i < in; ++i) input_grad[i] = ws.delta_prev[i];
    }
  }
}

BackwardResult backward(const Mlp& net, std::span<const double> input,
                        std::span<const double> upstream) {
  MlpWorkspace ws;
  nn::forward(net, input, ws);
  BackwardResult out;
  out.param_gradient.assign(net.param_count(), 0.0);
  out.input_gradient.assign(net.input_dim(), 0.0);
  backward_accumulate(net, ws, upstream, out.param_gradient, out.input_gradient);
  return out;
}

}  // namespace gridrl::nn
