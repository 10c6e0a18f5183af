#ifndef TORELLI_INVARIANTS_HPP
#define TORELLI_INVARIANTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torelli/catalog.hpp"
#include "torelli/matrix.hpp"
#include "torelli/minimal_model.hpp"
#include "torelli/star_data.hpp"

namespace torelli {

// ------------------------------------------------------- p1 decompositions

/// Writes p1 as sum a_ij z_i z_j over the degree-2 basis, a symmetric.
/// Returns nullopt when b1 != 0 or p1 is not in the image of Sym^2 H^2.
/// Throws std::invalid_argument when the ring is missing or stops below
/// degree 4.
std::optional<StarData> check_assumption_star(const ManifoldDescriptor& d, const RingElement& p1);

/// Case 1, 2 or 3 of the Betti-number criterion for infinite Torelli groups.
std::optional<int> check_assumption_double_star(long long b2, long long b3, long long b4, bool p1_zero);

struct FinitenessReport {
  std::optional<bool> sym2_iso;    // H^4 = Sym^2 H^2
  std::optional<bool> h3_zero;     // H^3 = 0
  std::optional<bool> p1_nonzero;  // p1 != 0
  std::vector<std::string> failures;

  bool ok() const { return sym2_iso.value_or(false) && h3_zero.value_or(false) && p1_nonzero.value_or(false); }
};

/// The three finiteness conditions. Conditions needing absent data stay
/// unset and are listed among the failures.
FinitenessReport finiteness_conditions(const ManifoldDescriptor& d);

struct LemmaBounds {
  long long k = 0;          // (b2 - 1) b3 indecomposable degree-4 elements
  long long l_min = 0;      // b4 - b2(b2+1)/2, at least 0
  long long kpi4F_min = 0;  // lower bound for rank K pi_4(F)
  friend bool operator==(const LemmaBounds&, const LemmaBounds&) = default;
};

LemmaBounds lemma_bounds(long long b2, long long b3, long long b4, bool p1_zero);

struct FibrationRankProfile {
  std::vector<std::size_t> pi_B;  // index k <= 4: rank pi_k(B) (x) Q = rank pi_k(X) (x) Q
  bool p1_nonzero = false;
  std::size_t pi4F = 0;
  std::size_t kpi4B = 0;
  std::size_t kpi4F_min = 0;
};

/// Homotopy ranks of the fibre F of the normal 4-type B -> BSO. Requires
/// dimension 8, p1 and a model built through degree 4 (std::invalid_argument).
FibrationRankProfile fibration_ranks(const ManifoldDescriptor& d, const MinimalModelResult& model);

// --------------------------------------------------------------- J calculus

struct TwistLetter {
  std::size_t sphere = 1;  // 1..2g
  long long m = 0;         // parameter m times the generator coming from pi_3(SO(3))
  friend bool operator==(const TwistLetter&, const TwistLetter&) = default;
};

struct TwistWord {
  std::size_t g = 1;
  std::vector<TwistLetter> letters;
};

/// "i:m,i:m,..." (empty text is the empty word). Throws std::invalid_argument
/// on malformed text and std::out_of_range on sphere indices outside 1..2g.
TwistWord parse_twist_word(std::size_t g, std::string_view text);

/// J of a product of Dehn twists in the basis PD(e_1), ..., PD(e_2g).
RationalVector j_of_twist_word(const TwistWord& word);

/// Intersection form on H_3: omega(e_{2i-1}, e_{2i}) = 1 = -omega(e_{2i}, e_{2i-1}).
Rational symplectic_form(std::size_t i, std::size_t j);

/// <sum c_i PD(e_i), e_j> = sum c_i omega(e_i, e_j); j is 1-based.
Rational pair_with_cycle(const RationalVector& pd_coords, std::size_t j);

/// Rank of the subgroup generated by the J-vectors (all words share one g).
std::size_t j_lattice_rank(const std::vector<TwistWord>& words);

/// One twist with m = 1 on each of the 2g spheres.
std::vector<TwistWord> single_twists(std::size_t g);

/// Cohomology of the mapping torus around the Wang sequence
/// 0 -> H^3(X) -> H^4(X_f) -> H^4(X) -> 0.
struct MappingTorusData {
  std::size_t b3 = 0;
  std::size_t b4_torus = 0;
  std::size_t b4_base = 0;
  RationalMatrix delta;     // b4_torus x b3
  RationalMatrix restrict;  // b4_base x b4_torus
  RationalVector p1_torus;
  RationalVector zbar_products;  // sum a_ij zbar_i zbar_j in H^4(X_f)
};

/// Unique J with delta J = p1_torus - zbar_products. Throws
/// std::invalid_argument when the sequence data is not exact and
/// std::domain_error when the difference does not restrict to zero.
RationalVector jd_from_mapping_torus(const MappingTorusData& data);

/// Mapping torus of a twist word on a threefold with b2 = 1, z^2 = d g and
/// p1 = l z^2. H^4(X_f) has the basis delta(PD(e_1..e_2g)), gbar.
MappingTorusData dehn_twist_torus(const TwistWord& word, const Rational& l, const Rational& d);

struct H3Class {
  std::string ambient;
  RationalVector coords;
};

/// J_D(f x id) = J(f) under H^3(X) = H^3(X x (CP^1)^r).
H3Class jd_product_with_cp1(const H3Class& j, int r);

// ------------------------------------------------------------------ verdict

enum class Status { Finite, Infinite, Unknown };
std::string to_string(Status s);

struct Reason {
  std::string claim;
  std::string cite;
};

struct Verdict {
  std::string name;
  Status status = Status::Unknown;
  std::optional<int> double_star_case;
  std::string route;  // short label of the deciding argument
  std::vector<Reason> reasons;
  std::optional<LemmaBounds> bounds;
  std::optional<FibrationRankProfile> fibration;
  std::optional<std::size_t> j_lattice_rank;
  std::optional<RationalVector> j_vector;  // J of the twist on sphere 1
  std::vector<std::string> notes;

  /// One line, e.g. "INFINITE — Assumption (**) case 1 (Thm 1.4); k=48, l≥80".
  std::string summary() const;
};

struct VerdictOptions {
  int max_degree = 4;       // minimal model depth for the fibration profile
  bool fibration = true;    // build the model when ring and p1 are present
};

Verdict torelli_verdict(const ManifoldDescriptor& d, const VerdictOptions& options = {});

}  // namespace torelli

#endif
