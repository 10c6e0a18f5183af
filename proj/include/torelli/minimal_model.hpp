#ifndef TORELLI_MINIMAL_MODEL_HPP
#define TORELLI_MINIMAL_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torelli/graded_ring.hpp"
#include "torelli/matrix.hpp"
#include "torelli/rational.hpp"

namespace torelli {

struct Generator {
  std::string name;
  int degree = 2;
  bool odd() const { return degree % 2 != 0; }
};

/// Product of generators, stored as nondecreasing generator indices. Odd
/// generators appear at most once.
using Monomial = std::vector<std::uint32_t>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sorted by monomial, no zero coefficients.
using Polynomial = std::vector<std::pair<Monomial, Rational>>;

/// Free graded-commutative algebra on named generators of degree >= 2 with a
/// differential of degree +1. Generators are appended in nondecreasing degree
/// and each differential may only involve earlier generators.
class FreeCDGA {
 public:
  std::size_t add_generator(std::string name, int degree, Polynomial differential = {});

  const std::vector<Generator>& generators() const { return gens_; }
  const Polynomial& differential(std::size_t g) const { return diff_.at(g); }
  std::size_t size() const { return gens_.size(); }

  int degree(const Monomial& m) const;

  /// Graded-commutative product of monomials: sign and sorted monomial, or
  /// sign 0 when an odd generator repeats.
  std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const;

  /// Leibniz extension of the differential.
  Polynomial d(const Monomial& m) const;
  Polynomial d(const Polynomial& p) const;

  /// Every generator differential lies in the square of the augmentation ideal.
  bool is_decomposable() const;
  /// d(d(g)) = 0 for every generator.
  bool is_square_zero() const;

  std::vector<std::size_t> generator_counts(int max_degree) const;

 private:
  void accumulate_d(const Monomial& m, const Rational& c,
                    std::unordered_map<Monomial, Rational, MonomialHash>& acc) const;
  int degree_of_indices(const Monomial& m) const;
  // Sorts a word in the generators; returns (0, {}) when it vanishes.
  std::pair<int, Monomial> normalize(Monomial word) const;

  std::vector<Generator> gens_;
  std::vector<Polynomial> diff_;
  std::unordered_map<std::string, std::size_t> names_;
};

/// All graded-commutative monomials of the given degree, lexicographic in
/// generator indices. Generators must be listed in nondecreasing degree.
std::vector<Monomial> monomial_basis(const std::vector<Generator>& gens, int degree);

/// Number of monomials of the given degree (saturates at UINT64_MAX).
std::uint64_t count_monomials(const std::vector<Generator>& gens, int degree);

struct CohomologyResult {
  std::size_t dimension = 0;
  std::vector<Polynomial> representatives;
};

/// Cocycles modulo coboundaries in one degree. Representatives are the
/// canonical kernel vectors whose free coordinates are not hit by the
/// coboundaries. Throws std::domain_error when d is not square-zero.
CohomologyResult cdga_cohomology(const FreeCDGA& cdga, int degree);

struct ModelOptions {
  int degree_limit = 12;                       // largest admissible max_degree
  std::uint64_t monomial_limit = 4'000'000;    // per-degree basis size guard
};

struct MinimalModelResult {
  FreeCDGA model;
  int max_degree = 0;
  std::vector<RingElement> generator_images;  // quasi-isomorphism on generators
  /// Index k: model cohomology classes (rows) mapped to H^k (columns), for
  /// 2 <= k <= max_degree + 1.
  std::vector<RationalMatrix> quasi_iso;
  std::vector<std::size_t> homotopy_ranks;  // index k: dim pi_k (x) Q
  /// Index k: degree-k generators (rows) to the class they map to in H^k.
  std::vector<RationalMatrix> hurewicz;
  std::vector<std::size_t> hurewicz_kernel;  // index k: rank of K pi_k
  std::vector<std::string> warnings;
};

/// Minimal model of the formal CDGA (H, d = 0) through degree max_degree:
/// model cohomology matches H in degrees <= max_degree and injects in degree
/// max_degree + 1. Cohomology above the top degree is zero. Throws
/// std::invalid_argument for non-simply-connected rings or an inadmissible
/// degree, std::length_error when a monomial space exceeds the guard.
MinimalModelResult build_minimal_model(const GradedRing& ring, int max_degree, const ModelOptions& options = {});

/// Generators of degree k with nonzero differential.
std::size_t hurewicz_kernel_rank(const MinimalModelResult& result, int k);

std::string format_monomial(const FreeCDGA& cdga, const Monomial& m);
std::string format_polynomial(const FreeCDGA& cdga, const Polynomial& p);

}  // namespace torelli

#endif
