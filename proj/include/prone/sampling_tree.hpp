#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace prone {

/// Complete binary tree over n nonnegative masses s_1..s_n.
///
/// Leaves are padded with zeros up to the next power of two. Every internal
/// node stores the sum of its two children, recomputed from the children on
/// each write. Positions are 1-based: valid indices are 1..size().
///
///   total()              O(1)
///   find(r)              O(log n), inverse CDF
///   update(a, i1, i2)    O((i2 - i1 + 1) + log n), s_i <- a_i for i in [i1, i2]
class SamplingTree {
 public:
  explicit SamplingTree(std::span<const double> masses);

  std::size_t size() const noexcept { return n_; }
  std::size_t capacity() const noexcept { return capacity_; }

  double total() const noexcept { return nodes_[1]; }

  /// Mass stored at 1-based position i.
  double leaf(std::size_t i) const { return nodes_[capacity_ + i - 1]; }

  /// The unique l with prefix(l - 1) <= r < prefix(l). Requires 0 <= r < total().
  /// Never returns a zero-mass position.
  std::size_t find(double r) const;

  /// s_i <- a[i - 1] for i in [i1, i2]; `a` is indexed like the full mass array.
  void update(std::span<const double> a, std::size_t i1, std::size_t i2);

  /// Internal nodes recomputed by the most recent update().
  std::size_t last_update_internal_nodes() const noexcept { return last_touched_; }

  /// Recomputes every internal node from its children and compares. Test hook.
  bool consistent() const;

 private:
  std::size_t n_;
  std::size_t capacity_;
  std::vector<double> nodes_;  // implicit heap, root at 1, leaves at [capacity_, 2 * capacity_)
  std::size_t last_touched_ = 0;
};

}  // namespace prone
