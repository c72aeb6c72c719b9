#include "cshift/mlp.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "cshift/errors.hpp"
#include "cshift/seeding.hpp"

namespace cshift {

Mlp::Mlp(std::vector<std::size_t> layer_sizes, std::uint64_t seed)
    : layer_sizes_(std::move(layer_sizes)) {
  if (layer_sizes_.size() < 2 || layer_sizes_.back() != 1) {
    throw PreconditionError("network needs at least an input layer and a scalar output");
  }
  if (std::find(layer_sizes_.begin(), layer_sizes_.end(), std::size_t{0}) != layer_sizes_.end()) {
    throw PreconditionError("layer sizes must be positive");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    offsets_.push_back(total);
    total += layer_sizes_[l] * layer_sizes_[l + 1] + layer_sizes_[l + 1];
  }
  params_.assign(total, 0.0);

  Rng rng(derive_seed(seed, "mlp-init"));
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    const std::size_t fan_in = layer_sizes_[l];
    const std::size_t fan_out = layer_sizes_[l + 1];
    const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    double* w = params_.data() + weight_offset(l);
    for (std::size_t k = 0; k < fan_in * fan_out; ++k) w[k] = a * (2.0 * uniform01(rng) - 1.0);
  }
}

double Mlp::forward(std::span<const double> input) const {
  if (input.size() != input_dimension()) {
    throw PreconditionError(
        fmt::format("input has dimension {}, network expects {}", input.size(), input_dimension()));
  }
  std::vector<double> current(input.begin(), input.end());
  std::vector<double> next;
  const std::size_t layers = layer_sizes_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = layer_sizes_[l];
    const std::size_t out = layer_sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    next.assign(out, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      double z = b[o];
      for (std::size_t i = 0; i < in; ++i) z += w[o * in + i] * current[i];
      next[o] = l + 1 < layers ? std::max(z, 0.0) : z;
    }
    current.swap(next);
  }
  return current.front();
}

double Mlp::loss(std::span<const double> inputs, std::span<const double> targets) const {
  const std::size_t dim = input_dimension();
  if (inputs.size() != targets.size() * dim || targets.empty()) {
    throw PreconditionError("inputs and targets disagree in size");
  }
  double total = 0.0;
  for (std::size_t s = 0; s < targets.size(); ++s) {
    const double r = forward(inputs.subspan(s * dim, dim)) - targets[s];
    total += r * r;
  }
  return total / static_cast<double>(targets.size());
}

double Mlp::loss_and_gradient(std::span<const double> inputs, std::span<const double> targets,
                              std::vector<double>& gradient) const {
  const std::size_t dim = input_dimension();
  if (inputs.size() != targets.size() * dim || targets.empty()) {
    throw PreconditionError("inputs and targets disagree in size");
  }
  gradient.assign(params_.size(), 0.0);
  const std::size_t layers = layer_sizes_.size() - 1;
  const double scale = 1.0 / static_cast<double>(targets.size());

  // activations[l] is the input to layer l; activations[layers] the output
  std::vector<std::vector<double>> activations(layers + 1);
  std::vector<double> delta;
  std::vector<double> previous_delta;
  double total = 0.0;

  for (std::size_t s = 0; s < targets.size(); ++s) {
    const auto x = inputs.subspan(s * dim, dim);
    activations[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t in = layer_sizes_[l];
      const std::size_t out = layer_sizes_[l + 1];
      const double* w = params_.data() + weight_offset(l);
      const double* b = params_.data() + bias_offset(l);
      auto& next = activations[l + 1];
      next.assign(out, 0.0);
      for (std::size_t o = 0; o < out; ++o) {
        double z = b[o];
        for (std::size_t i = 0; i < in; ++i) z += w[o * in + i] * activations[l][i];
        next[o] = l + 1 < layers ? std::max(z, 0.0) : z;
      }
    }

    const double residual = activations[layers].front() - targets[s];
    total += residual * residual;

    delta.assign(1, 2.0 * residual * scale);
    for (std::size_t l = layers; l-- > 0;) {
      const std::size_t in = layer_sizes_[l];
      const std::size_t out = layer_sizes_[l + 1];
      const double* w = params_.data() + weight_offset(l);
      double* gw = gradient.data() + weight_offset(l);
      double* gb = gradient.data() + bias_offset(l);
      const auto& a = activations[l];
      for (std::size_t o = 0; o < out; ++o) {
        gb[o] += delta[o];
        for (std::size_t i = 0; i < in; ++i) gw[o * in + i] += delta[o] * a[i];
      }
      if (l == 0) break;
      // back through layer l's weights and layer l-1's ReLU
      previous_delta.assign(in, 0.0);
      for (std::size_t i = 0; i < in; ++i) {
        if (a[i] <= 0.0) continue;
        double g = 0.0;
        for (std::size_t o = 0; o < out; ++o) g += w[o * in + i] * delta[o];
        previous_delta[i] = g;
      }
      delta.swap(previous_delta);
    }
  }
  return total * scale;
}

}  // namespace cshift
