#ifndef TORELLI_GRADED_RING_HPP
#define TORELLI_GRADED_RING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torelli/echelon.hpp"
#include "torelli/matrix.hpp"
#include "torelli/rational.hpp"

namespace torelli {

/// Homogeneous element of a GradedRing, coordinates in the degree basis.
struct RingElement {
  int degree = 0;
  RationalVector coeffs;

  bool is_zero() const { return torelli::is_zero(coeffs); }
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

RingElement operator+(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a, const RingElement& b);
RingElement operator*(const Rational& s, const RingElement& a);

/// Finite presentation of a rational cohomology ring H^0..H^n by its
/// structure constants. Degree 0 is one-dimensional and its basis element is
/// the unit, so only products between positive degrees are stored. Tables are
/// kept for p <= q; the other order follows from x*y = (-1)^{pq} y*x.
class GradedRing {
 public:
  class Builder;

  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(int degree) const;
  const RationalVector& fundamental() const { return fundamental_; }

  RingElement zero(int degree) const;
  RingElement unit() const { return basis(0, 0); }
  RingElement basis(int degree, std::size_t index) const;
  RingElement element(int degree, RationalVector coeffs) const;

  /// Product e_i * e_j of basis elements (degree p, index i) and (q, j).
  SparseVector basis_product(int p, std::size_t i, int q, std::size_t j) const;

  /// Cup product. Throws std::domain_error when the degrees exceed the top.
  RingElement multiply(const RingElement& a, const RingElement& b) const;

  /// Evaluation against the fundamental class; zero below the top degree.
  Rational evaluate(const RingElement& top_class) const;

  /// Degree pairs (p, q), 1 <= p <= q, with a nonzero product table.
  std::vector<std::pair<int, int>> product_degrees() const;
  /// Nonzero entries of the (p, q) table, p <= q, keyed by (i, j).
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, SparseVector>> table_entries(int p, int q) const;

  friend bool operator==(const GradedRing& a, const GradedRing& b);

  // Common rings.
  static GradedRing point();
  static GradedRing sphere(int n);
  static GradedRing complex_projective(int n);

 private:
  struct Table {
    std::size_t right_dim = 0;
    std::unordered_map<std::uint64_t, SparseVector> entries;  // key i*right_dim + j
  };

  const SparseVector* lookup(int p, std::size_t i, int q, std::size_t j) const;

  std::vector<std::size_t> dims_;
  std::map<std::pair<int, int>, Table> tables_;
  RationalVector fundamental_;
};

/// Assembles a GradedRing. Products may be given in either order; a pair
/// given twice must agree up to the Koszul sign. build() checks the unit,
/// shapes, graded-commutativity and (optionally) associativity on every basis
/// triple, throwing std::invalid_argument on failure.
class GradedRing::Builder {
 public:
  explicit Builder(std::vector<std::size_t> dims);

  Builder& set_product(int p, std::size_t i, int q, std::size_t j, const RationalVector& value);
  Builder& set_product(int p, std::size_t i, int q, std::size_t j, const SparseVector& value);
  Builder& set_fundamental(RationalVector functional);

  GradedRing build(bool check_associativity = true) const;

 private:
  GradedRing ring_;
  bool has_fundamental_ = false;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Poincare duality: b_k = b_{n-k}, b_n = 1, fundamental functional nonzero,
/// and every pairing H^k x H^{n-k} -> Q nondegenerate.
ValidationReport poincare_validate(const GradedRing& ring);

/// Pairing matrix H^k x H^{n-k} -> Q in the two degree bases.
RationalMatrix pairing_matrix(const GradedRing& ring, int k);

/// Matrix of Sym^2 H^2 -> H^4: one row per pair i <= j (lexicographic),
/// one column per degree-4 basis element.
RationalMatrix sym2_matrix(const GradedRing& ring);

/// Tensor product ring with Koszul signs. The degree-k basis lists the
/// blocks A^p (x) B^{k-p} by increasing p, each in row-major (i, j) order.
GradedRing kunneth_product(const GradedRing& a, const GradedRing& b);

/// Index of a^p_i (x) b^q_j in the degree p+q basis of kunneth_product(a, b).
std::size_t kunneth_index(const GradedRing& a, const GradedRing& b, int p, std::size_t i, int q, std::size_t j);

/// Connected sum of two rings with the same top degree: intermediate degrees
/// are direct sums (a first), mixed products vanish, top classes identified
/// so that both fundamental evaluations are preserved.
GradedRing connected_sum(const GradedRing& a, const GradedRing& b);

std::vector<long long> betti_convolution(const std::vector<long long>& a, const std::vector<long long>& b);

}  // namespace torelli

#endif
