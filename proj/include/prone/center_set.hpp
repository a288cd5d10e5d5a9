#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace prone {

/// k centers in R^d, stored row-major.
class CenterSet {
 public:
  CenterSet() = default;
  explicit CenterSet(std::size_t d) : d_(d) {}
  CenterSet(std::size_t k, std::size_t d) : d_(d), values_(k * d, 0.0) {}
  CenterSet(std::size_t d, std::vector<double> values) : d_(d), values_(std::move(values)) {
    if (d_ == 0 || values_.size() % d_ != 0) throw std::invalid_argument("CenterSet: size is not a multiple of d");
  }

  std::size_t size() const noexcept { return d_ == 0 ? 0 : values_.size() / d_; }
  std::size_t dim() const noexcept { return d_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<double> operator[](std::size_t j) { return {values_.data() + j * d_, d_}; }
  std::span<const double> operator[](std::size_t j) const { return {values_.data() + j * d_, d_}; }

  std::span<const double> flat() const noexcept { return values_; }

  void push_back(std::span<const double> c) {
    if (c.size() != d_) throw std::invalid_argument("CenterSet: dimension mismatch");
    values_.insert(values_.end(), c.begin(), c.end());
  }

  friend bool operator==(const CenterSet&, const CenterSet&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<double> values_;
};

}  // namespace prone
