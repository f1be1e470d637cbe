// Copyright 2026 The epigame Authors
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

#ifndef EPIGAME_TENSOR_HPP
#define EPIGAME_TENSOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace epigame {

/**
 * Dense real tensor indexed by one pure strategy per player.
 *
 * Axis i is the i-th player in the game's declared player order and has
 * length |S_i|; storage is row-major, so axis 0 is the outermost axis.
 * This matches the nested-array layout of the file format exactly.
 */
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> dims, double fill = 0.0) : dims_(std::move(dims)) {
    std::int64_t n = 1;
    for (int d : dims_) {
      if (d <= 0) throw std::invalid_argument("Tensor: axis length must be positive");
      n *= d;
    }
    data_.assign(static_cast<std::size_t>(n), fill);
  }

  Tensor(std::vector<int> dims, std::vector<double> data)
      : dims_(std::move(dims)), data_(std::move(data)) {
    std::int64_t n = 1;
    for (int d : dims_) {
      if (d <= 0) throw std::invalid_argument("Tensor: axis length must be positive");
      n *= d;
    }
    if (static_cast<std::int64_t>(data_.size()) != n)
      throw std::invalid_argument("Tensor: data size does not match axis lengths");
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

  std::int64_t flat_index(std::span<const int> idx) const {
    std::int64_t f = 0;
    for (std::size_t a = 0; a < dims_.size(); ++a) {
      f = f * dims_[a] + idx[a];
    }
    return f;
  }

  double at(std::span<const int> idx) const { return data_[static_cast<std::size_t>(flat_index(idx))]; }
  double& at(std::span<const int> idx) { return data_[static_cast<std::size_t>(flat_index(idx))]; }

  double flat(std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }
  double& flat(std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }

  const std::vector<double>& raw() const { return data_; }
  std::vector<double>& raw() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) {
      double a = v < 0 ? -v : v;
      if (a > m) m = a;
    }
    return m;
  }

  bool operator==(const Tensor& other) const = default;

  // Advances a multi-index through the tensor in flat (row-major) order.
  // Returns false once the index wraps back to all zeros.
  bool next_index(std::vector<int>& idx) const {
    for (int a = rank() - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < dims_[static_cast<std::size_t>(a)]) return true;
      idx[static_cast<std::size_t>(a)] = 0;
    }
    return false;
  }

 private:
  std::vector<int> dims_;
  std::vector<double> data_;
};

}  // namespace epigame

#endif  // EPIGAME_TENSOR_HPP
