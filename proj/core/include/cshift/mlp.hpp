#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cshift {

/// Fully connected network with ReLU hidden layers and a linear scalar output.
/// Parameters live in one flat buffer, layer by layer: weights (out x in,
/// row-major) followed by biases.
class Mlp {
 public:
  Mlp() = default;
  /// layer_sizes = {input, hidden..., 1}. Weights are drawn uniformly from
  /// [-a, a] with a = sqrt(6 / (fan_in + fan_out)); biases start at zero.
  Mlp(std::vector<std::size_t> layer_sizes, std::uint64_t seed);

  const std::vector<std::size_t>& layer_sizes() const noexcept { return layer_sizes_; }
  std::size_t input_dimension() const noexcept { return layer_sizes_.front(); }

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }

  double forward(std::span<const double> input) const;

  /// Mean squared error over rows of `inputs` (row-major, input_dimension()
  /// columns).
  double loss(std::span<const double> inputs, std::span<const double> targets) const;

  /// Same loss; `gradient` is resized to parameters().size() and filled.
  double loss_and_gradient(std::span<const double> inputs, std::span<const double> targets,
                           std::vector<double>& gradient) const;

 private:
  std::size_t weight_offset(std::size_t layer) const noexcept { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const noexcept {
    return offsets_[layer] + layer_sizes_[layer] * layer_sizes_[layer + 1];
  }

  std::vector<std::size_t> layer_sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

}  // namespace cshift
