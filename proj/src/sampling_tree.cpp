#include "prone/sampling_tree.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace prone {

namespace {

void check_mass(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("SamplingTree: masses must be finite and nonnegative");
}

// Largest double strictly below v (v > 0).
double below(double v) { return std::nextafter(v, 0.0); }

}  // namespace

SamplingTree::SamplingTree(std::span<const double> masses)
    : n_(masses.size()), capacity_(std::bit_ceil(masses.size())) {
  if (n_ == 0) throw std::invalid_argument("SamplingTree: need at least one mass");
  nodes_.assign(2 * capacity_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    check_mass(masses[i]);
    nodes_[capacity_ + i] = masses[i];
  }
  for (std::size_t v = capacity_ - 1; v >= 1; --v) nodes_[v] = nodes_[2 * v] + nodes_[2 * v + 1];
}

std::size_t SamplingTree::find(double r) const {
  if (!(total() > 0.0)) throw std::out_of_range("SamplingTree::find: total mass is zero");
  if (!(r >= 0.0) || !(r < total())) throw std::out_of_range("SamplingTree::find: r outside [0, total)");
  std::size_t v = 1;
  while (v < capacity_) {
    const std::size_t left = 2 * v;
    const double left_sum = nodes_[left];
    if (r < left_sum) {
      v = left;
    } else if (nodes_[left + 1] > 0.0) {
      // Rounding in the parent sum can leave r just above the right subtree's
      // mass; clamp so the descent stays inside a positive-mass subtree.
      r -= left_sum;
      if (r >= nodes_[left + 1]) r = below(nodes_[left + 1]);
      v = left + 1;
    } else {
      r = below(left_sum);
      v = left;
    }
  }
  return v - capacity_ + 1;
}

void SamplingTree::update(std::span<const double> a, std::size_t i1, std::size_t i2) {
  if (i1 < 1 || i1 > i2 || i2 > n_) throw std::invalid_argument("SamplingTree::update: need 1 <= i1 <= i2 <= n");
  if (a.size() < i2) throw std::invalid_argument("SamplingTree::update: mass array too short");
  for (std::size_t i = i1; i <= i2; ++i) check_mass(a[i - 1]);
  for (std::size_t i = i1; i <= i2; ++i) nodes_[capacity_ + i - 1] = a[i - 1];
  std::size_t lo = (capacity_ + i1 - 1) / 2;
  std::size_t hi = (capacity_ + i2 - 1) / 2;
  std::size_t touched = 0;
  while (lo >= 1) {
    for (std::size_t v = lo; v <= hi; ++v) nodes_[v] = nodes_[2 * v] + nodes_[2 * v + 1];
    touched += hi - lo + 1;
    lo /= 2;
    hi /= 2;
  }
  last_touched_ = touched;
}

bool SamplingTree::consistent() const {
  for (std::size_t v = 1; v < capacity_; ++v) {
    if (nodes_[v] != nodes_[2 * v] + nodes_[2 * v + 1]) return false;
  }
  for (std::size_t i = n_; i < capacity_; ++i) {
    if (nodes_[capacity_ + i] != 0.0) return false;
  }
  return true;
}

}  // namespace prone
