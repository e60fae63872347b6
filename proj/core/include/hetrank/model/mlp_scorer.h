// Copyright 2026 The hetrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HETRANK_MODEL_MLP_SCORER_H_
#define HETRANK_MODEL_MLP_SCORER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hetrank {

enum class CapacityPreset { kLightweight, kExpressive };

std::string_view CapacityPresetName(CapacityPreset preset);
std::optional<CapacityPreset> ParseCapacityPreset(std::string_view name);

// Hidden widths for the two presets. The expressive widths must dominate the
// lightweight ones (at least as deep, at least as wide at every shared index).
struct ScorerArchitecture {
  std::vector<size_t> lightweight_hidden = {24};
  std::vector<size_t> expressive_hidden = {64, 32};

  // Throws a config error when the dominance relation does not hold.
  void Validate() const;
  std::vector<size_t> LayerDims(CapacityPreset preset, size_t input_dim) const;
};

// Full layer dimension list, input first, scalar output last.
using LayerDims = std::vector<size_t>;

size_t ParameterCount(const LayerDims& dims);

// Gradient (or any other parameter-shaped quantity) laid out exactly like the
// parameters of an MlpScorer: per layer, the row-major out x in weight block
// followed by the out-sized bias block.
class GradientBuffer {
 public:
  GradientBuffer() = default;
  explicit GradientBuffer(LayerDims dims);

  const LayerDims& layer_dims() const { return dims_; }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  std::span<const double> weights(size_t layer) const;
  std::span<const double> biases(size_t layer) const;

  bool CongruentWith(const LayerDims& dims) const { return dims == dims_; }

  void SetZero();
  // this += scale * other. Shapes must match.
  void AddScaled(const GradientBuffer& other, double scale);
  void Scale(double factor);
  double Dot(const GradientBuffer& other) const;
  double Norm() const;

  friend bool operator==(const GradientBuffer&, const GradientBuffer&) =
      default;

 private:
  LayerDims dims_;
  std::vector<double> values_;
};

// Per-layer activations recorded by Forward and consumed by Backward.
// activations[0] is the concatenated input; activations[l] for l >= 1 is the
// tanh output of hidden layer l.
struct ActivationTrace {
  LayerDims layer_dims;
  std::vector<std::vector<double>> activations;
  double logit = 0.0;
};

// Concatenated-input MLP scorer f([user, item]; theta). Hidden layers use tanh,
// the single output unit is linear and yields a logit.
class MlpScorer {
 public:
  MlpScorer() = default;
  // Zero-initialised parameters.
  explicit MlpScorer(LayerDims dims,
                     std::optional<CapacityPreset> preset = std::nullopt);

  // Glorot-uniform weights in +/- sqrt(6 / (fan_in + fan_out)), zero biases.
  static MlpScorer Initialized(LayerDims dims, uint64_t seed,
                               std::optional<CapacityPreset> preset =
                                   std::nullopt);

  const LayerDims& layer_dims() const { return dims_; }
  size_t input_dim() const { return dims_.front(); }
  size_t num_layers() const { return dims_.size() - 1; }
  size_t parameter_count() const { return params_.size(); }
  std::optional<CapacityPreset> preset() const { return preset_; }

  std::span<const double> parameters() const { return params_; }
  std::span<double> mutable_parameters() { return params_; }
  std::span<const double> weights(size_t layer) const;
  std::span<double> mutable_weights(size_t layer);
  std::span<const double> biases(size_t layer) const;
  std::span<double> mutable_biases(size_t layer);

  // Scores the pair. Throws an input-shape error unless
  // user.size() + item.size() == input_dim(). When `trace` is non-null it is
  // filled for a later Backward call.
  double Forward(std::span<const double> user, std::span<const double> item,
                 ActivationTrace* trace = nullptr) const;

  // grads += d(upstream * logit)/d(theta). Throws a shape error if the trace
  // or the buffer does not match this scorer.
  void BackwardAccumulate(const ActivationTrace& trace, double upstream,
                          GradientBuffer& grads) const;
  GradientBuffer Backward(const ActivationTrace& trace, double upstream) const;

  friend bool operator==(const MlpScorer&, const MlpScorer&) = default;

 private:
  LayerDims dims_;
  std::vector<size_t> offsets_;
  std::vector<double> params_;
  std::optional<CapacityPreset> preset_;
};

// Multiply-add convention: sum over layers of 2 * in * out, plus out for the
// activation applied after every layer (identity included).
int64_t CountFlops(const LayerDims& dims);
inline int64_t CountFlops(const MlpScorer& scorer) {
  return CountFlops(scorer.layer_dims());
}

}  // namespace hetrank

#endif  // HETRANK_MODEL_MLP_SCORER_H_
