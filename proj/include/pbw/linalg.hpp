#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pbw/rational.hpp"

namespace pbw {

/// Sparse rational vector keyed by column index; no zero entries.
using SparseRow = std::map<int, Rational>;

void axpy(SparseRow& y, const Rational& a, const SparseRow& x);

/// Row echelon form over Q with monic pivot rows, grown one row at a time.
/// The pivot of a row is its smallest column. Reduction eliminates every
/// pivot column in a single ascending pass, so the remainder of a vector is
/// canonical: it is the unique representative of its class modulo the row
/// space supported off the pivot columns.
///
/// With tracking enabled every stored row remembers its expression in the
/// inserted rows, which yields a basis of the left kernel.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}

  /// Inserts a row. Returns true when the rank grew.
  bool insert(SparseRow row);
  SparseRow reduce(SparseRow row) const;
  bool contains(const SparseRow& row) const { return reduce(row).empty(); }

  int rank() const { return static_cast<int>(pivots_.size()); }
  int inserted() const { return inserted_; }
  bool is_pivot(int column) const { return pivots_.count(column) != 0; }
  const std::map<int, SparseRow>& pivots() const { return pivots_; }

  /// Left kernel: combinations (over insertion indices) of inserted rows
  /// that vanish. Empty unless tracking.
  const std::vector<SparseRow>& kernel() const { return kernel_; }

 private:
  bool track_;
  int inserted_ = 0;
  std::map<int, SparseRow> pivots_;
  std::map<int, SparseRow> tags_;
  std::vector<SparseRow> kernel_;
};

int rank(const std::vector<SparseRow>& rows);

using DenseMatrix = std::vector<std::vector<Rational>>;

/// Inverse of a square matrix, or nullopt when singular.
std::optional<DenseMatrix> inverse(DenseMatrix a);

}  // namespace pbw
