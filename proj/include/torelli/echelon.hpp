#ifndef TORELLI_ECHELON_HPP
#define TORELLI_ECHELON_HPP

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torelli/rational.hpp"

namespace torelli {

/// Sparse vector over Q: (index, value) pairs, strictly increasing index, no
/// stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);  // sorts, merges, drops zeros
  static SparseVector from_dense(const RationalVector& v);
  static SparseVector unit(std::size_t index);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  std::size_t leading() const { return entries_.front().first; }
  Rational at(std::size_t index) const;

  RationalVector to_dense(std::size_t length) const;
  void scale(const Rational& s);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Accumulates a*x into a sparse accumulator keyed by index.
void add_scaled(std::unordered_map<std::size_t, Rational>& acc, const Rational& a, const SparseVector& x);
SparseVector collect(const std::unordered_map<std::size_t, Rational>& acc);

/// Subspace of Q^n held as sparse echelon rows with unit pivots. Rows are
/// semi-reduced while inserting; reduce_fully() brings them to rref.
class EchelonSpace {
 public:
  /// Reduces v against the current rows and appends the remainder if
  /// nonzero. Returns true when v was independent.
  bool insert(const SparseVector& v);

  /// Remainder of v after reduction against the current rows.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  void reduce_fully();

  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVector>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;
  bool is_pivot(std::size_t column) const { return pivot_row_.count(column) > 0; }

  /// Right kernel of the row space as a map on Q^columns: one vector per
  /// non-pivot column f, equal to e_f minus the rref column f spread over
  /// the pivots. Requires reduce_fully(). Returned in increasing f.
  std::vector<SparseVector> kernel_basis(std::size_t columns) const;

  /// Non-pivot columns below `columns`, increasing.
  std::vector<std::size_t> free_columns(std::size_t columns) const;

 private:
  std::vector<SparseVector> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

}  // namespace torelli

#endif
