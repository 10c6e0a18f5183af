// Independent oracles and generators shared by the test binaries.
#ifndef TORELLI_TEST_SUPPORT_HPP
#define TORELLI_TEST_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "torelli/echelon.hpp"
#include "torelli/graded_ring.hpp"
#include "torelli/matrix.hpp"
#include "torelli/rational.hpp"

namespace testsupport {

using torelli::GradedRing;
using torelli::Integer;
using torelli::Rational;
using torelli::RationalMatrix;
using torelli::RationalVector;
using torelli::SparseVector;

// Rank by fraction-free (Bareiss) elimination on an integer matrix obtained
// by clearing denominators row by row. Shares no code with rref.
inline std::size_t bareiss_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline Rational small_rational(std::mt19937_64& rng, int span = 5, int max_den = 3) {
  std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
  return torelli::make_rational(num(rng), den(rng));
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m(i, j) = small_rational(rng);
  return m;
}

// Random matrix of prescribed rank as a product (r x k)(k x c).
inline RationalMatrix random_rank_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k, 1.0) * random_matrix(rng, k, c, 1.0);
}

// Random invertible matrix: unit lower times unit upper triangular times a
// permutation.
inline RationalMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  RationalMatrix lower = RationalMatrix::identity(n), upper = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower(i, j) = small_rational(rng, 2, 1);
      upper(j, i) = small_rational(rng, 2, 2);
    }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  RationalMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1;
  return lower * upper * p;
}

// A change of basis in one degree: new_i = sum_a forward[i][a] old_a, and
// old_a = sum_i backward[a][i] new_i.
struct DegreeChange {
  std::vector<SparseVector> forward;
  std::vector<SparseVector> backward;
};

inline DegreeChange identity_change(std::size_t n) {
  DegreeChange c;
  for (std::size_t i = 0; i < n; ++i) {
    c.forward.push_back(SparseVector::unit(i));
    c.backward.push_back(SparseVector::unit(i));
  }
  return c;
}

// new_i = scale_i * old_{perm_i}
inline DegreeChange permutation_change(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Rational> scale(n);
  std::uniform_int_distribution<int> s(1, 3), sign(0, 1);
  for (auto& x : scale) x = torelli::make_rational(sign(rng) ? s(rng) : -s(rng), s(rng));
  DegreeChange c;
  c.forward.resize(n);
  c.backward.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.forward[i] = SparseVector({{perm[i], scale[i]}});
    c.backward[perm[i]] = SparseVector({{i, Rational(1 / scale[i])}});
  }
  return c;
}

inline DegreeChange dense_change(std::mt19937_64& rng, std::size_t n) {
  const RationalMatrix t = random_invertible(rng, n);
  const RationalMatrix inv = *torelli::inverse(t);
  // new = T old, so old = T^{-1} new.
  DegreeChange c;
  for (std::size_t i = 0; i < n; ++i) {
    c.forward.push_back(SparseVector::from_dense(t.row(i)));
    c.backward.push_back(SparseVector::from_dense(inv.row(i)));
  }
  return c;
}

// The same ring written in another basis.
inline GradedRing change_basis(const GradedRing& ring, const std::vector<DegreeChange>& change) {
  const int n = ring.top_degree();
  GradedRing::Builder b(ring.dims());
  auto to_new = [&](int degree, const SparseVector& old) {
    std::vector<SparseVector::Entry> out;
    for (const auto& [a, x] : old.entries())
      for (const auto& [i, y] : change[degree].backward[a].entries()) out.emplace_back(i, x * y);
    return SparseVector(std::move(out));
  };
  for (int p = 1; p <= n; ++p)
    for (int q = p; p + q <= n; ++q)
      for (std::size_t i = 0; i < ring.dim(p); ++i)
        for (std::size_t j = (p == q ? i : 0); j < ring.dim(q); ++j) {
          std::vector<SparseVector::Entry> acc;
          for (const auto& [a, x] : change[p].forward[i].entries())
            for (const auto& [c, y] : change[q].forward[j].entries()) {
              const SparseVector prod = ring.basis_product(p, a, q, c);
              for (const auto& [k, z] : prod.entries()) acc.emplace_back(k, x * y * z);
            }
          SparseVector v = to_new(p + q, SparseVector(std::move(acc)));
          if (!v.empty()) b.set_product(p, i, q, j, v);
        }
  RationalVector fund(ring.dim(n));
  for (std::size_t i = 0; i < fund.size(); ++i)
    for (const auto& [a, x] : change[n].forward[i].entries()) fund[i] += x * ring.fundamental()[a];
  b.set_fundamental(fund);
  return b.build(false);
}

// Rebuilds a ring through the Builder with the exhaustive associativity check.
inline GradedRing rebuild_checked(const GradedRing& ring) {
  GradedRing::Builder b(ring.dims());
  for (const auto& [p, q] : ring.product_degrees())
    for (const auto& [ij, v] : ring.table_entries(p, q)) b.set_product(p, ij.first, q, ij.second, v);
  b.set_fundamental(ring.fundamental());
  return b.build(true);
}

}  // namespace testsupport

#endif
