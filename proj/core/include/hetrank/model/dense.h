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

#ifndef HETRANK_MODEL_DENSE_H_
#define HETRANK_MODEL_DENSE_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hetrank {

// Owning vector of 64-bit floats. Feature vectors and user representations are
// passed around as spans over these; the class exists so a dimension is always
// attached to the storage.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(size_t dim, double fill = 0.0) : values_(dim, fill) {}
  DenseVector(std::initializer_list<double> values) : values_(values) {}
  explicit DenseVector(std::vector<double> values)
      : values_(std::move(values)) {}

  size_t dim() const { return values_.size(); }
  double operator[](size_t i) const { return values_[i]; }
  double& operator[](size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }
  operator std::span<const double>() const { return values_; }  // NOLINT

  bool AllFinite() const;

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredNorm(std::span<const double> a);
bool AllFinite(std::span<const double> a);

// Row-major matrix; rows are returned as spans.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  std::span<const double> row(size_t r) const {
    return std::span<const double>(values_).subspan(r * cols_, cols_);
  }
  std::span<double> mutable_row(size_t r) {
    return std::span<double>(values_).subspan(r * cols_, cols_);
  }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
};

}  // namespace hetrank

#endif  // HETRANK_MODEL_DENSE_H_
