#ifndef TORELLI_MATRIX_HPP
#define TORELLI_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "torelli/rational.hpp"

namespace torelli {

/// Dense row-major matrix over Q. 0 x n and n x 0 shapes are allowed.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  RationalVector col(std::size_t c) const;
  const std::vector<Rational>& entries() const { return data_; }

  RationalMatrix transpose() const;
  bool is_zero() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& x);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form, leftmost nonzero pivoting. Zero rows are kept at
// the bottom so the shape is unchanged.
RationalMatrix rref(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

struct RankKernel {
  std::size_t rank = 0;
  RationalMatrix kernel;  // rows form the rref basis of the right kernel
};

RankKernel rank_and_kernel(const RationalMatrix& m);

/// One solution of m x = b, free variables set to zero; nullopt when
/// inconsistent. Throws std::invalid_argument when b has the wrong length.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

std::optional<RationalMatrix> inverse(const RationalMatrix& m);

}  // namespace torelli

#endif
