// One PASS/FAIL line per acceptance criterion. Every comparison is exact
// (rational arithmetic, tolerance 0); criterion 3 also has a 60 s time limit.
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "torelli/catalog.hpp"
#include "torelli/hypersurface.hpp"
#include "torelli/invariants.hpp"
#include "torelli/minimal_model.hpp"

using namespace torelli;

namespace {

constexpr double kModelSecondsLimit = 60.0;

// Collects failed sub-checks of one criterion.
class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& n) { notes_.push_back(n); }

  bool report(int index) const {
    const bool ok = failures_.empty();
    std::cout << (ok ? "PASS" : "FAIL") << " [" << index << "] " << title_ << " (" << checks_ - failures_.size()
              << "/" << checks_ << " checks, tolerance exact)";
    for (const auto& n : notes_) std::cout << "; " << n;
    for (const auto& f : failures_) std::cout << "\n     failed: " << f;
    std::cout << "\n";
    return ok;
  }

 private:
  std::string title_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

template <typename T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Criterion verdict_regression() {
  Criterion c("verdict regression over the builtin catalog");
  const auto k2t = torelli_verdict(resolve_reference("K2T"));
  c.check(k2t.status == Status::Infinite && k2t.double_star_case == 1, "K2T: Infinite via case 1, got " + k2t.summary());
  c.check(k2t.summary() == "INFINITE — Assumption (**) case 1 (Thm 1.4); k=48, l≥80", "K2T summary: " + k2t.summary());

  const auto k3 = torelli_verdict(resolve_reference("K3^[2]"));
  c.check(k3.status == Status::Finite, "K3^[2]: Finite, got " + k3.summary());

  const auto x5 = torelli_verdict(resolve_reference("X(5)"));
  c.check(x5.status == Status::Infinite && x5.j_lattice_rank == 204u &&
              x5.route.rfind("image of J is a lattice", 0) == 0,
          "X(5): Infinite via the J lattice, got " + x5.summary());

  for (const char* ref : {"X(5)xCP1", "X(5)xCP1^2"}) {
    const auto v = torelli_verdict(resolve_reference(ref));
    c.check(v.status == Status::Infinite && v.route.find("J_D(f × id) = J(f)") != std::string::npos,
            std::string(ref) + ": Infinite via J_D(f x id) = J(f), got " + v.summary());
  }
  return c;
}

Criterion lemma_arithmetic() {
  Criterion c("lemma bounds for K2T");
  const LemmaBounds b = lemma_bounds(7, 8, 108, false);
  c.check(b.k == 48, "k = (b2-1) b3 = 48, got " + str(b.k));
  c.check(b.l_min == 80, "l_min = b4 - b2(b2+1)/2 = 80, got " + str(b.l_min));
  c.check(b.kpi4F_min == 47, "kpi4F_min = 47, got " + str(b.kpi4F_min));
  // Every (**) case needs only positivity of both bounds.
  for (long long b2 = 0; b2 <= 8; ++b2)
    for (long long b3 = 0; b3 <= 6; ++b3)
      for (long long b4 = 0; b4 <= 50; ++b4)
        for (bool z : {false, true})
          if (check_assumption_double_star(b2, b3, b4, z)) {
            const auto l = lemma_bounds(b2, b3, b4, z);
            c.check(l.l_min >= 1 && l.kpi4F_min >= 1,
                    "(**) without positive bounds at b2=" + str(b2) + " b3=" + str(b3) + " b4=" + str(b4));
          }
  return c;
}

Criterion finiteness_data() {
  Criterion c("finiteness data of K3^[2]");
  const auto k3 = hilbert_square_k3();
  c.check(k3.b(2) * (k3.b(2) + 1) / 2 == 276 && k3.b(4) == 276, "dim Sym^2 H^2 = 276 = b4");
  c.check(rank(sym2_matrix(*k3.ring)) == 276, "Sym^2 H^2 -> H^4 has rank 276");
  const auto start = std::chrono::steady_clock::now();
  const auto m = build_minimal_model(*k3.ring, 4);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto counts = m.model.generator_counts(4);
  c.check(counts[2] == 23, "23 generators in degree 2, got " + str(counts[2]));
  c.check(counts[3] == 0, "no generators in degree 3, got " + str(counts[3]));
  c.check(counts[4] == 0, "no generators in degree 4, got " + str(counts[4]));
  c.check(seconds < kModelSecondsLimit, "model within " + str(kModelSecondsLimit) + " s, took " + str(seconds));
  c.note("model built in " + str(static_cast<int>(seconds * 1000)) + " ms");
  return c;
}

Criterion hypersurface_sweep() {
  Criterion c("hypersurface sweep 1 <= d <= 20");
  for (long long d = 1; d <= 20; ++d) {
    const auto h = chern_data(3, d);
    c.check(h.euler == Integer(static_cast<long>(d * (10 - 10 * d + 5 * d * d - d * d * d))), "euler of X(" + str(d) + ")");
    c.check(h.p1_coeff == Rational(static_cast<long>(5 - d * d)), "p1 of X(" + str(d) + ")");
  }
  const auto x5 = chern_data(3, 5);
  c.check(x5.euler == -200, "euler X(5) = -200");
  c.check((*x5.betti)[3] == 204, "b3 X(5) = 204");
  c.check((*chern_data(3, 1).betti)[3] == 0, "b3 X(1) = 0");
  c.check((*chern_data(3, 2).betti)[3] == 0, "b3 X(2) = 0");
  bool flagged = false;
  for (const auto& n : torelli_verdict(hypersurface_threefold(2)).notes)
    flagged = flagged || n.find("X(2) has b3 = 0") != std::string::npos;
  c.check(flagged, "X(2) verdict flags b3 = 0");
  c.note("b3(X(2)) = 0 reported and flagged");
  return c;
}

Criterion j_calculus() {
  Criterion c("J calculus");
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> genus(1, 6), length(0, 8);
  std::uniform_int_distribution<long long> m(-9, 9);
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t g = genus(rng);
    std::uniform_int_distribution<std::size_t> sphere(1, 2 * g);
    TwistWord u{g, {}}, v{g, {}};
    for (std::size_t i = length(rng); i > 0; --i) u.letters.push_back({sphere(rng), m(rng)});
    for (std::size_t i = length(rng); i > 0; --i) v.letters.push_back({sphere(rng), m(rng)});
    TwistWord uv = u;
    uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
    const auto ju = j_of_twist_word(u), jv = j_of_twist_word(v), juv = j_of_twist_word(uv);
    for (std::size_t i = 0; i < juv.size(); ++i)
      if (juv[i] != ju[i] + jv[i]) {
        ++bad;
        break;
      }
  }
  c.check(bad == 0, "J(uv) = J(u) + J(v) on 1000 random words, " + str(bad) + " violations");
  for (std::size_t g = 1; g <= 8; ++g)
    c.check(j_lattice_rank(single_twists(g)) == 2 * g, "lattice rank 2g for g = " + str(g));
  c.check(j_lattice_rank(single_twists(102)) == 204, "lattice rank 204 for the quintic");
  for (std::size_t i = 1; i <= 204; ++i) {
    const auto j = j_of_twist_word(TwistWord{102, {{i, 1}}});
    const std::size_t partner = i % 2 == 1 ? i + 1 : i - 1;
    // <J, e_partner> = 4 omega(e_i, e_partner); the pairing value is 4 up to orientation.
    c.check(pair_with_cycle(j, partner) == 4 * symplectic_form(i, partner) && abs(pair_with_cycle(j, partner)) == 4,
            "pairing of the twist on sphere " + str(i));
  }
  return c;
}

bool structurally_sound(const MinimalModelResult& m) { return m.model.is_square_zero() && m.model.is_decomposable(); }

Criterion model_oracles() {
  Criterion c("minimal-model oracle suite");
  auto ranks = [](const MinimalModelResult& m, int k) { return m.homotopy_ranks[static_cast<std::size_t>(k)]; };

  const auto s2 = build_minimal_model(GradedRing::sphere(2), 4);
  c.check(structurally_sound(s2), "S^2 model d^2 = 0 and decomposable");
  c.check(ranks(s2, 2) == 1 && ranks(s2, 3) == 1 && ranks(s2, 4) == 0, "S^2 ranks 1, 1, 0");
  c.check(hurewicz_kernel_rank(s2, 3) == 1, "S^2 Hurewicz kernel in degree 3 is 1");

  const auto s3s3 = build_minimal_model(kunneth_product(GradedRing::sphere(3), GradedRing::sphere(3)), 4);
  c.check(structurally_sound(s3s3), "S^3 x S^3 model d^2 = 0 and decomposable");
  c.check(ranks(s3s3, 3) == 2 && ranks(s3s3, 4) == 0, "S^3 x S^3 ranks pi_3 = 2, pi_4 = 0");

  const auto cp3 = build_minimal_model(GradedRing::complex_projective(3), 4);
  c.check(structurally_sound(cp3), "CP^3 model d^2 = 0 and decomposable");
  c.check(ranks(cp3, 2) == 1 && ranks(cp3, 3) == 0 && ranks(cp3, 4) == 0, "CP^3 ranks 1, 0, 0");

  const auto x5 = hypersurface_threefold(5);
  const auto mx = build_minimal_model(*x5.ring, 4);
  c.check(structurally_sound(mx), "X(5) model d^2 = 0 and decomposable");
  c.check(ranks(mx, 2) == 1, "X(5) pi_2 = 1, got " + str(ranks(mx, 2)));
  c.check(ranks(mx, 3) == 204, "X(5) pi_3 = 204, got " + str(ranks(mx, 3)));
  // Expected value 0; H^5 = 0 forces a degree-4 generator killing each x*y_i.
  c.check(ranks(mx, 4) == 0, "X(5) pi_4 = 0 expected, computed " + str(ranks(mx, 4)) + " (Hurewicz kernel " +
                                 str(hurewicz_kernel_rank(mx, 4)) + ")");

  std::mt19937_64 rng(103);
  std::size_t differing = 0, unsound = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<testsupport::DegreeChange> ch;
    for (int k = 0; k <= 6; ++k)
      ch.push_back(k == 0 ? testsupport::identity_change(1) : testsupport::permutation_change(rng, x5.ring->dim(k)));
    const auto m = build_minimal_model(testsupport::change_basis(*x5.ring, ch), 4);
    if (!structurally_sound(m)) ++unsound;
    if (m.homotopy_ranks != mx.homotopy_ranks || m.hurewicz_kernel != mx.hurewicz_kernel) ++differing;
  }
  c.check(unsound == 0, "permuted models d^2 = 0 and decomposable, " + str(unsound) + " failures");
  c.check(differing == 0, "ranks invariant under 20 random basis permutations, " + str(differing) + " differ");
  return c;
}

Criterion wang_consistency() {
  Criterion c("Wang sequence and J_D");
  std::mt19937_64 rng(107);
  std::size_t wrong = 0, moved_wrong = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t b3 = 1 + static_cast<std::size_t>(t % 6), b4 = 1 + static_cast<std::size_t>((t / 6) % 4);
    const std::size_t n = b3 + b4;
    const RationalMatrix p = testsupport::random_invertible(rng, n);
    const RationalMatrix pinv = *inverse(p);
    MappingTorusData d;
    d.b3 = b3;
    d.b4_base = b4;
    d.b4_torus = n;
    d.delta = RationalMatrix(n, b3);
    d.restrict = RationalMatrix(b4, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < b3; ++k) d.delta(i, k) = p(i, k);
    for (std::size_t r = 0; r < b4; ++r)
      for (std::size_t k = 0; k < n; ++k) d.restrict(r, k) = pinv(b3 + r, k);
    RationalVector j(b3);
    for (auto& x : j) x = testsupport::small_rational(rng);
    d.zbar_products.resize(n);
    for (auto& x : d.zbar_products) x = testsupport::small_rational(rng);
    const RationalVector dj = d.delta * j;
    d.p1_torus.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.p1_torus[i] = dj[i] + d.zbar_products[i];

    const RationalVector got = jd_from_mapping_torus(d);
    // Back-substitution: delta J = p1 - sum a_ij zbar_i zbar_j.
    const RationalVector back = d.delta * got;
    bool ok = got == j;
    for (std::size_t i = 0; i < n; ++i) ok = ok && back[i] == d.p1_torus[i] - d.zbar_products[i];
    if (!ok) ++wrong;

    const RationalMatrix q = testsupport::random_invertible(rng, n);
    MappingTorusData moved = d;
    moved.delta = q * d.delta;
    moved.restrict = d.restrict * *inverse(q);
    moved.p1_torus = q * d.p1_torus;
    moved.zbar_products = q * d.zbar_products;
    if (jd_from_mapping_torus(moved) != got) ++moved_wrong;
  }
  c.check(wrong == 0, "100 random exact instances solved by back-substitution, " + str(wrong) + " wrong");
  c.check(moved_wrong == 0, "J_D invariant under basis change of H^4(X_f), " + str(moved_wrong) + " differ");

  const RationalVector dehn = jd_from_mapping_torus(dehn_twist_torus(parse_twist_word(102, "1:1"), -4, 5));
  RationalVector expected(204);
  expected[0] = 4;
  c.check(dehn == expected, "Dehn-twist torus gives 4 PD(e_1)");
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion (*)()> criteria{verdict_regression, lemma_arithmetic, finiteness_data, hypersurface_sweep,
                                        j_calculus,         model_oracles,    wang_consistency};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      if (!criteria[i]().report(static_cast<int>(i + 1))) ++failed;
    } catch (const std::exception& e) {
      std::cout << "FAIL [" << i + 1 << "] threw: " << e.what() << "\n";
      ++failed;
    }
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
