#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prone/center_set.hpp"

namespace prone {

/// Raised by the text loaders. line() is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable n x d point collection with dense (row-major) or sparse (CSR)
/// storage. Dense storage counts every entry as stored, so nnz = n * d.
class Dataset {
 public:
  static Dataset from_dense(std::size_t n, std::size_t d, std::vector<double> values);
  /// CSR rows: row i owns entries [row_offsets[i], row_offsets[i + 1]).
  static Dataset from_sparse(std::size_t d, std::vector<std::size_t> row_offsets,
                             std::vector<std::uint32_t> columns, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool is_sparse() const noexcept { return sparse_; }

  /// Dense storage only.
  std::span<const double> dense_row(std::size_t i) const {
    return {values_.data() + i * d_, d_};
  }

  struct SparseRow {
    std::span<const std::uint32_t> columns;
    std::span<const double> values;
  };
  /// Sparse storage only.
  SparseRow sparse_row(std::size_t i) const {
    const std::size_t begin = offsets_[i];
    const std::size_t len = offsets_[i + 1] - begin;
    return {{columns_.data() + begin, len}, {values_.data() + begin, len}};
  }

  /// Calls f(column, value) for every stored entry of row i.
  template <class F>
  void for_each_stored(std::size_t i, F&& f) const {
    if (sparse_) {
      const auto row = sparse_row(i);
      for (std::size_t p = 0; p < row.columns.size(); ++p) f(std::size_t{row.columns[p]}, row.values[p]);
    } else {
      const auto row = dense_row(i);
      for (std::size_t j = 0; j < d_; ++j) f(j, row[j]);
    }
  }

  double dot(std::size_t i, std::span<const double> v) const;
  /// out += scale * x_i
  void accumulate_row(std::size_t i, double scale, std::span<double> out) const;
  double squared_distance(std::size_t i, std::span<const double> c) const;
  /// Same as above with ||c||^2 precomputed; cheaper for sparse rows.
  double squared_distance(std::size_t i, std::span<const double> c, double c_sqnorm) const;

  std::vector<double> row(std::size_t i) const;
  Dataset subset(std::span<const std::size_t> rows) const;
  Dataset to_dense() const;
  Dataset to_sparse() const;

 private:
  Dataset() = default;

  std::size_t n_ = 0;
  std::size_t d_ = 0;
  bool sparse_ = false;
  std::vector<double> values_;
  std::vector<std::uint32_t> columns_;
  std::vector<std::size_t> offsets_;
};

struct WeightedPoint {
  std::vector<double> point;
  double weight = 1.0;
};

// Text formats. CSV: comma separated, optional single header line.
// Sparse: space separated "index:value" pairs per row, optional "#d <int>" first line.
Dataset parse_dense_csv(std::istream& in, bool has_header);
Dataset load_dense_csv(const std::filesystem::path& path, bool has_header);
Dataset parse_sparse(std::istream& in);
Dataset load_sparse(const std::filesystem::path& path);

/// Shortest round-trip formatting; reloading yields bit-identical values.
void write_csv(std::ostream& out, const Dataset& data);
void write_csv(const std::filesystem::path& path, const Dataset& data);
void write_csv(std::ostream& out, const CenterSet& centers);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Generators.

/// Four unit-variance Gaussian blobs at distance 1000 along each positive
/// axis of R^4, mirrored through the origin, plus 5 points at the origin.
/// n = 8m + 5.
Dataset gen_adversarial_gaussian(std::size_t m, std::uint64_t seed);

inline constexpr double kAdversarialOffset = 1000.0;

struct GaussianMixture {
  Dataset data;
  CenterSet centers;
  std::vector<std::uint32_t> labels;
};

/// k unit-variance Gaussian clusters of per_cluster points each, centers
/// uniform in [0, separation]^d. Points are grouped by cluster.
GaussianMixture gen_gaussian_mixture(std::size_t k, std::size_t per_cluster, std::size_t d,
                                     double separation, std::uint64_t seed);

}  // namespace prone
