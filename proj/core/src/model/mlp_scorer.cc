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

#include "hetrank/model/mlp_scorer.h"

#include <cmath>
#include <random>
#include <string>

#include "hetrank/common/error.h"
#include "hetrank/common/rng.h"

namespace hetrank {
namespace {

void ValidateDims(const LayerDims& dims) {
  if (dims.size() < 2) {
    throw Error(ErrorCode::kShape, "scorer needs at least one layer");
  }
  for (size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::kShape, "layer dimension must be > 0");
  }
  if (dims.back() != 1) {
    throw Error(ErrorCode::kShape, "scorer output dimension must be 1");
  }
}

std::vector<size_t> LayerOffsets(const LayerDims& dims) {
  std::vector<size_t> offsets;
  offsets.reserve(dims.size());
  size_t offset = 0;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    offsets.push_back(offset);
    offset += dims[l] * dims[l + 1] + dims[l + 1];
  }
  offsets.push_back(offset);
  return offsets;
}

}  // namespace

std::string_view CapacityPresetName(CapacityPreset preset) {
  return preset == CapacityPreset::kLightweight ? "lightweight" : "expressive";
}

std::optional<CapacityPreset> ParseCapacityPreset(std::string_view name) {
  if (name == "lightweight") return CapacityPreset::kLightweight;
  if (name == "expressive") return CapacityPreset::kExpressive;
  return std::nullopt;
}

void ScorerArchitecture::Validate() const {
  if (expressive_hidden.size() < lightweight_hidden.size()) {
    throw Error(ErrorCode::kConfig,
                "expressive preset must be at least as deep as lightweight");
  }
  for (size_t i = 0; i < lightweight_hidden.size(); ++i) {
    if (lightweight_hidden[i] == 0 ||
        expressive_hidden[i] < lightweight_hidden[i]) {
      throw Error(ErrorCode::kConfig,
                  "expressive preset must be at least as wide as lightweight "
                  "at hidden layer " +
                      std::to_string(i));
    }
  }
  for (size_t w : expressive_hidden) {
    if (w == 0) throw Error(ErrorCode::kConfig, "hidden width must be > 0");
  }
}

std::vector<size_t> ScorerArchitecture::LayerDims(CapacityPreset preset,
                                                  size_t input_dim) const {
  const auto& hidden = preset == CapacityPreset::kLightweight
                           ? lightweight_hidden
                           : expressive_hidden;
  std::vector<size_t> dims;
  dims.push_back(input_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(1);
  return dims;
}

size_t ParameterCount(const LayerDims& dims) {
  size_t count = 0;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    count += dims[l] * dims[l + 1] + dims[l + 1];
  }
  return count;
}

int64_t CountFlops(const LayerDims& dims) {
  int64_t flops = 0;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto in = static_cast<int64_t>(dims[l]);
    const auto out = static_cast<int64_t>(dims[l + 1]);
    flops += 2 * in * out + out;
  }
  return flops;
}

// GradientBuffer ------------------------------------------------------------

GradientBuffer::GradientBuffer(LayerDims dims)
    : dims_(std::move(dims)), values_(ParameterCount(dims_), 0.0) {}

std::span<const double> GradientBuffer::weights(size_t layer) const {
  size_t offset = 0;
  for (size_t l = 0; l < layer; ++l) {
    offset += dims_[l] * dims_[l + 1] + dims_[l + 1];
  }
  return std::span<const double>(values_).subspan(
      offset, dims_[layer] * dims_[layer + 1]);
}

std::span<const double> GradientBuffer::biases(size_t layer) const {
  const auto w = weights(layer);
  const size_t offset = static_cast<size_t>(w.data() - values_.data()) +
                        w.size();
  return std::span<const double>(values_).subspan(offset, dims_[layer + 1]);
}

void GradientBuffer::SetZero() { std::fill(values_.begin(), values_.end(), 0.0); }

void GradientBuffer::AddScaled(const GradientBuffer& other, double scale) {
  if (other.dims_ != dims_) {
    throw Error(ErrorCode::kShape, "gradient buffers are not congruent");
  }
  for (size_t i = 0; i < values_.size(); ++i) {
    values_[i] += scale * other.values_[i];
  }
}

void GradientBuffer::Scale(double factor) {
  for (double& v : values_) v *= factor;
}

double GradientBuffer::Dot(const GradientBuffer& other) const {
  if (other.dims_ != dims_) {
    throw Error(ErrorCode::kShape, "gradient buffers are not congruent");
  }
  double sum = 0.0;
  for (size_t i = 0; i < values_.size(); ++i) {
    sum += values_[i] * other.values_[i];
  }
  return sum;
}

double GradientBuffer::Norm() const { return std::sqrt(Dot(*this)); }

// MlpScorer -------------------------------------------------------------------

MlpScorer::MlpScorer(LayerDims dims, std::optional<CapacityPreset> preset)
    : dims_(std::move(dims)), preset_(preset) {
  ValidateDims(dims_);
  offsets_ = LayerOffsets(dims_);
  params_.assign(offsets_.back(), 0.0);
}

MlpScorer MlpScorer::Initialized(LayerDims dims, uint64_t seed,
                                 std::optional<CapacityPreset> preset) {
  MlpScorer scorer(std::move(dims), preset);
  Rng rng = MakeStream(seed, {stream::kInit});
  for (size_t l = 0; l < scorer.num_layers(); ++l) {
    const double fan_in = static_cast<double>(scorer.dims_[l]);
    const double fan_out = static_cast<double>(scorer.dims_[l + 1]);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (double& w : scorer.mutable_weights(l)) w = dist(rng);
  }
  return scorer;
}

std::span<const double> MlpScorer::weights(size_t layer) const {
  return std::span<const double>(params_).subspan(
      offsets_[layer], dims_[layer] * dims_[layer + 1]);
}

std::span<double> MlpScorer::mutable_weights(size_t layer) {
  return std::span<double>(params_).subspan(offsets_[layer],
                                            dims_[layer] * dims_[layer + 1]);
}

std::span<const double> MlpScorer::biases(size_t layer) const {
  return std::span<const double>(params_).subspan(
      offsets_[layer] + dims_[layer] * dims_[layer + 1], dims_[layer + 1]);
}

std::span<double> MlpScorer::mutable_biases(size_t layer) {
  return std::span<double>(params_).subspan(
      offsets_[layer] + dims_[layer] * dims_[layer + 1], dims_[layer + 1]);
}

double MlpScorer::Forward(std::span<const double> user,
                          std::span<const double> item,
                          ActivationTrace* trace) const {
  if (dims_.empty()) throw Error(ErrorCode::kShape, "scorer is empty");
  if (user.size() + item.size() != input_dim()) {
    throw Error(ErrorCode::kInputShape,
                "input dimension " + std::to_string(user.size()) + "+" +
                    std::to_string(item.size()) + " does not match scorer " +
                    "input dimension " + std::to_string(input_dim()));
  }
  thread_local std::vector<double> scratch_in;
  thread_local std::vector<double> scratch_out;

  std::vector<double>* input = &scratch_in;
  if (trace != nullptr) {
    trace->layer_dims = dims_;
    trace->activations.resize(num_layers());
    input = &trace->activations[0];
  }
  input->resize(input_dim());
  std::copy(user.begin(), user.end(), input->begin());
  std::copy(item.begin(), item.end(), input->begin() + user.size());

  double logit = 0.0;
  for (size_t l = 0; l < num_layers(); ++l) {
    const size_t in = dims_[l];
    const size_t out = dims_[l + 1];
    const double* w = params_.data() + offsets_[l];
    const double* b = w + in * out;
    const double* a = input->data();
    const bool last = l + 1 == num_layers();
    if (last) {
      double z = b[0];
      for (size_t j = 0; j < in; ++j) z += w[j] * a[j];
      logit = z;
      break;
    }
    std::vector<double>* next =
        trace != nullptr ? &trace->activations[l + 1]
                         : (input == &scratch_in ? &scratch_out : &scratch_in);
    next->resize(out);
    double* h = next->data();
    for (size_t i = 0; i < out; ++i) {
      const double* wi = w + i * in;
      double z = b[i];
      for (size_t j = 0; j < in; ++j) z += wi[j] * a[j];
      h[i] = std::tanh(z);
    }
    input = next;
  }
  if (trace != nullptr) trace->logit = logit;
  return logit;
}

void MlpScorer::BackwardAccumulate(const ActivationTrace& trace,
                                   double upstream,
                                   GradientBuffer& grads) const {
  if (trace.layer_dims != dims_ || trace.activations.size() != num_layers()) {
    throw Error(ErrorCode::kShape, "activation trace does not match scorer");
  }
  if (!grads.CongruentWith(dims_)) {
    throw Error(ErrorCode::kShape, "gradient buffer does not match scorer");
  }
  if (upstream == 0.0) return;

  thread_local std::vector<double> delta;
  thread_local std::vector<double> delta_prev;
  delta.assign(1, upstream);
  double* g = grads.mutable_values().data();
  for (size_t l = num_layers(); l-- > 0;) {
    const size_t in = dims_[l];
    const size_t out = dims_[l + 1];
    const double* w = params_.data() + offsets_[l];
    const double* a = trace.activations[l].data();
    double* gw = g + offsets_[l];
    double* gb = gw + in * out;
    for (size_t i = 0; i < out; ++i) {
      const double d = delta[i];
      double* gwi = gw + i * in;
      for (size_t j = 0; j < in; ++j) gwi[j] += d * a[j];
      gb[i] += d;
    }
    if (l == 0) break;
    delta_prev.assign(in, 0.0);
    for (size_t i = 0; i < out; ++i) {
      const double d = delta[i];
      const double* wi = w + i * in;
      for (size_t j = 0; j < in; ++j) delta_prev[j] += wi[j] * d;
    }
    for (size_t j = 0; j < in; ++j) delta_prev[j] *= 1.0 - a[j] * a[j];
    delta.swap(delta_prev);
  }
}

GradientBuffer MlpScorer::Backward(const ActivationTrace& trace,
                                   double upstream) const {
  GradientBuffer grads(dims_);
  BackwardAccumulate(trace, upstream, grads);
  return grads;
}

}  // namespace hetrank
