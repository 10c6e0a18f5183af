#include "torelli/invariants.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "torelli/echelon.hpp"

namespace torelli {

// ------------------------------------------------------- p1 decompositions

std::optional<StarData> check_assumption_star(const ManifoldDescriptor& d, const RingElement& p1) {
  if (!d.ring) throw std::invalid_argument("descriptor '" + d.name + "' has no cohomology ring");
  const GradedRing& ring = *d.ring;
  if (ring.top_degree() < 4) throw std::invalid_argument("ring of '" + d.name + "' stops below degree 4");
  if (p1.degree != 4 || p1.coeffs.size() != ring.dim(4)) throw std::invalid_argument("p1 is not a degree-4 class");
  if (ring.dim(1) != 0) return std::nullopt;

  const std::size_t b2 = ring.dim(2);
  StarData out{{}, RationalMatrix(b2, b2)};
  for (std::size_t i = 0; i < b2; ++i) out.classes.push_back(ring.basis(2, i));
  if (p1.is_zero()) return out;
  if (b2 == 0) return std::nullopt;

  const auto c = solve(sym2_matrix(ring).transpose(), p1.coeffs);
  if (!c) return std::nullopt;
  std::size_t row = 0;
  for (std::size_t i = 0; i < b2; ++i)
    for (std::size_t j = i; j < b2; ++j, ++row) {
      if (i == j) {
        out.coefficients(i, i) = (*c)[row];
      } else {
        out.coefficients(i, j) = (*c)[row] / 2;
        out.coefficients(j, i) = (*c)[row] / 2;
      }
    }
  return out;
}

std::optional<int> check_assumption_double_star(long long b2, long long b3, long long b4, bool p1_zero) {
  const bool many_b4 = b4 > b2 * (b2 + 1) / 2;
  if (b2 > 2 && b3 >= 1 && many_b4) return 1;
  if (b2 == 2 && b3 > 1 && many_b4) return 2;
  if (b2 == 2 && b3 == 1 && many_b4 && p1_zero) return 3;
  return std::nullopt;
}

FinitenessReport finiteness_conditions(const ManifoldDescriptor& d) {
  FinitenessReport r;
  if (d.dim != 8) r.failures.push_back("dimension is " + std::to_string(d.dim) + ", not 8");
  if (!d.simply_connected) r.failures.push_back("not simply connected");

  r.h3_zero = d.b(3) == 0;
  if (!*r.h3_zero) r.failures.push_back("(2) fails: b3 = " + std::to_string(d.b(3)));

  if (d.ring && d.ring->top_degree() >= 4) {
    const std::size_t b2 = d.ring->dim(2);
    const std::size_t sym = b2 * (b2 + 1) / 2;
    r.sym2_iso = sym == d.ring->dim(4) && (sym == 0 || rank(sym2_matrix(*d.ring)) == sym);
    if (!*r.sym2_iso) r.failures.push_back("(1) fails: Sym^2 H^2 -> H^4 is not an isomorphism");
  } else {
    r.failures.push_back("(1) undecided: no cohomology ring");
  }

  if (d.p1) {
    r.p1_nonzero = !d.p1->is_zero();
    if (!*r.p1_nonzero) r.failures.push_back("(3) fails: p1 = 0");
  } else {
    r.failures.push_back("(3) undecided: p1 unknown");
  }
  return r;
}

LemmaBounds lemma_bounds(long long b2, long long b3, long long b4, bool p1_zero) {
  LemmaBounds out;
  out.k = std::max(0LL, (b2 - 1) * b3);
  out.l_min = std::max(0LL, b4 - b2 * (b2 + 1) / 2);
  out.kpi4F_min = std::max(0LL, out.k - (p1_zero ? 0 : 1));
  return out;
}

FibrationRankProfile fibration_ranks(const ManifoldDescriptor& d, const MinimalModelResult& model) {
  if (d.dim != 8) throw std::invalid_argument("fibration ranks need an 8-manifold");
  if (model.max_degree < 4) throw std::invalid_argument("minimal model too shallow: needs degree 4");
  if (!d.p1) throw std::invalid_argument("fibration ranks need p1");
  FibrationRankProfile f;
  f.pi_B.assign(5, 0);
  for (int k = 2; k <= 4; ++k) f.pi_B[k] = model.homotopy_ranks[k];
  f.p1_nonzero = !d.p1->is_zero();
  const std::size_t drop = f.p1_nonzero ? 1 : 0;
  f.pi4F = f.pi_B[4] >= drop ? f.pi_B[4] - drop : 0;
  f.kpi4B = hurewicz_kernel_rank(model, 4);
  f.kpi4F_min = f.kpi4B >= drop ? f.kpi4B - drop : 0;
  return f;
}

// --------------------------------------------------------------- J calculus

TwistWord parse_twist_word(std::size_t g, std::string_view text) {
  if (g == 0) throw std::invalid_argument("genus must be >= 1");
  TwistWord w{g, {}};
  if (text.empty()) return w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string_view letter = text.substr(pos, end - pos);
    const std::size_t colon = letter.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("twist letter '" + std::string(letter) + "' lacks ':'");
    auto number = [&](std::string_view s, auto& value) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + std::string(s) + "' in twist letter '" + std::string(letter) + "'");
    };
    TwistLetter l;
    number(letter.substr(0, colon), l.sphere);
    number(letter.substr(colon + 1), l.m);
    if (l.sphere < 1 || l.sphere > 2 * g)
      throw std::out_of_range("sphere index " + std::to_string(l.sphere) + " outside 1.." + std::to_string(2 * g));
    w.letters.push_back(l);
    pos = end + 1;
  }
  return w;
}

RationalVector j_of_twist_word(const TwistWord& word) {
  if (word.g == 0) throw std::invalid_argument("genus must be >= 1");
  RationalVector j(2 * word.g);
  for (const auto& l : word.letters) {
    if (l.sphere < 1 || l.sphere > 2 * word.g)
      throw std::out_of_range("sphere index " + std::to_string(l.sphere) + " outside 1.." + std::to_string(2 * word.g));
    j[l.sphere - 1] += Rational(4) * static_cast<long>(l.m);
  }
  return j;
}

Rational symplectic_form(std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) throw std::out_of_range("basis indices are 1-based");
  if (i % 2 == 1 && j == i + 1) return 1;
  if (j % 2 == 1 && i == j + 1) return -1;
  return 0;
}

Rational pair_with_cycle(const RationalVector& pd_coords, std::size_t j) {
  if (j == 0 || j > pd_coords.size()) throw std::out_of_range("cycle index outside the basis");
  // Only the symplectic partner of e_j contributes.
  const std::size_t partner = j % 2 == 1 ? j + 1 : j - 1;
  if (partner > pd_coords.size()) return 0;
  return pd_coords[partner - 1] * symplectic_form(partner, j);
}

std::size_t j_lattice_rank(const std::vector<TwistWord>& words) {
  if (words.empty()) return 0;
  const std::size_t g = words.front().g;
  EchelonSpace span;
  for (const auto& w : words) {
    if (w.g != g) throw std::invalid_argument("twist words have different genus");
    span.insert(SparseVector::from_dense(j_of_twist_word(w)));
  }
  return span.rank();
}

std::vector<TwistWord> single_twists(std::size_t g) {
  std::vector<TwistWord> out;
  for (std::size_t i = 1; i <= 2 * g; ++i) out.push_back(TwistWord{g, {{i, 1}}});
  return out;
}

RationalVector jd_from_mapping_torus(const MappingTorusData& data) {
  const auto& D = data.delta;
  const auto& R = data.restrict;
  auto shape = [](const RationalMatrix& m, std::size_t r, std::size_t c, const char* what) {
    if (m.rows() != r || m.cols() != c)
      throw std::invalid_argument(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                                  std::to_string(c));
  };
  if (data.b4_torus != data.b3 + data.b4_base)
    throw std::invalid_argument("b4 of the torus must equal b3 + b4 of the fibre");
  shape(D, data.b4_torus, data.b3, "delta");
  shape(R, data.b4_base, data.b4_torus, "restrict");
  if (data.p1_torus.size() != data.b4_torus || data.zbar_products.size() != data.b4_torus)
    throw std::invalid_argument("p1_torus and zbar_products must have length b4 of the torus");
  if (rank(D) != data.b3) throw std::invalid_argument("delta is not injective");
  if (rank(R) != data.b4_base) throw std::invalid_argument("restrict is not surjective");
  if (!(R * D).is_zero()) throw std::invalid_argument("restrict . delta != 0");

  RationalVector rhs(data.b4_torus);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = data.p1_torus[i] - data.zbar_products[i];
  if (!is_zero(R * rhs)) throw std::domain_error("p1 - sum a_ij zbar_i zbar_j does not restrict to zero");
  auto j = solve(D, rhs);
  // Unreachable for exact data: ker(restrict) = im(delta) by the rank count.
  if (!j) throw std::domain_error("p1 - sum a_ij zbar_i zbar_j is not in the image of delta");
  return *j;
}

MappingTorusData dehn_twist_torus(const TwistWord& word, const Rational& l, const Rational& d) {
  const RationalVector j = j_of_twist_word(word);
  const std::size_t b3 = j.size();
  MappingTorusData t;
  t.b3 = b3;
  t.b4_base = 1;
  t.b4_torus = b3 + 1;
  // delta(PD(e_i)) has coordinate omega(e_i, e_k) against S^3_k x S^1.
  t.delta = RationalMatrix(b3 + 1, b3);
  for (std::size_t k = 1; k <= b3; ++k)
    for (std::size_t i = 1; i <= b3; ++i) t.delta(k - 1, i - 1) = symplectic_form(i, k);
  t.restrict = RationalMatrix(1, b3 + 1);
  t.restrict(0, b3) = 1;
  // The twist region contributes <p1, S^3_k x S^1> = <J, e_k>.
  t.p1_torus.assign(b3 + 1, 0);
  for (std::size_t k = 1; k <= b3; ++k) t.p1_torus[k - 1] = pair_with_cycle(j, k);
  t.p1_torus[b3] = l * d;
  t.zbar_products.assign(b3 + 1, 0);
  t.zbar_products[b3] = l * d;
  return t;
}

H3Class jd_product_with_cp1(const H3Class& j, int r) {
  if (r < 0) throw std::invalid_argument("number of CP^1 factors must be >= 0");
  if (r == 0) return j;
  return H3Class{j.ambient + "xCP1" + (r > 1 ? "^" + std::to_string(r) : ""), j.coords};
}

// ------------------------------------------------------------------ verdict

std::string to_string(Status s) {
  switch (s) {
    case Status::Finite:
      return "Finite";
    case Status::Infinite:
      return "Infinite";
    case Status::Unknown:
      break;
  }
  return "Unknown";
}

std::string Verdict::summary() const {
  std::ostringstream out;
  switch (status) {
    case Status::Infinite:
      out << "INFINITE — ";
      break;
    case Status::Finite:
      out << "FINITE — ";
      break;
    case Status::Unknown:
      out << "UNKNOWN — ";
      break;
  }
  out << route;
  if (double_star_case && bounds) out << "; k=" << bounds->k << ", l≥" << bounds->l_min;
  return out.str();
}

namespace {

bool has_nontrivial_square(const ManifoldDescriptor& d) {
  if (!d.ring || d.ring->dim(2) != 1 || d.ring->top_degree() < 4) return false;
  return !d.ring->basis_product(2, 0, 2, 0).empty();
}

// Threefold route: b2 = 1, z^2 != 0, b3 > 0 gives a lattice of J values.
bool j_lattice_route(const ManifoldDescriptor& d, Verdict& v) {
  if (d.dim != 6 || !d.simply_connected) return false;
  if (d.b(2) != 1) {
    v.notes.push_back("J-lattice criterion needs b2 = 1, found " + std::to_string(d.b(2)));
    return false;
  }
  if (d.b(3) <= 0) {
    v.notes.push_back("J-lattice criterion needs b3 > 0, found b3 = 0");
    return false;
  }
  if (!has_nontrivial_square(d)) {
    v.notes.push_back(d.ring ? "degree-2 generator squares to zero" : "cohomology ring unknown: z^2 undecided");
    return false;
  }
  if (d.b(3) % 2 != 0) {
    v.notes.push_back("b3 odd: no symplectic basis of H_3");
    return false;
  }
  const auto g = static_cast<std::size_t>(d.b(3) / 2);
  v.j_lattice_rank = j_lattice_rank(single_twists(g));
  v.j_vector = j_of_twist_word(TwistWord{g, {{1, 1}}});
  v.status = Status::Infinite;
  v.route = "image of J is a lattice of rank " + std::to_string(*v.j_lattice_rank) + " (Thm 1.2, Cor 1.3)";
  v.reasons.push_back({"b2 = 1 with z^2 != 0 and b3 = " + std::to_string(d.b(3)) + " > 0", "Thm 1.2"});
  v.reasons.push_back({"Dehn twists on the 2g = " + std::to_string(2 * g) +
                           " spheres S^3 give J = 4 PD(e_i), spanning a lattice of rank " +
                           std::to_string(*v.j_lattice_rank),
                       "Thm 1.2"});
  v.reasons.push_back({"T(X) is infinite", "Cor 1.3"});
  return true;
}

}  // namespace

Verdict torelli_verdict(const ManifoldDescriptor& d, const VerdictOptions& options) {
  Verdict v;
  v.name = d.name;
  const bool p1_known = d.p1.has_value();
  const bool p1_zero = p1_known && d.p1->is_zero();

  if (d.hypersurface && d.hypersurface->n == 3 && d.hypersurface->d == 2 && d.b(3) == 0)
    v.notes.push_back("X(2) has b3 = 0: the quadric threefold is an exception to \"d > 1 implies H^3 != 0\"");

  if (d.dim == 8 && d.simply_connected) {
    const auto bounds = lemma_bounds(d.b(2), d.b(3), d.b(4), p1_zero);
    if (options.fibration && d.ring && d.p1) {
      try {
        v.fibration = fibration_ranks(d, build_minimal_model(*d.ring, std::max(4, options.max_degree)));
      } catch (const std::exception& e) {
        v.notes.push_back(std::string("fibration ranks unavailable: ") + e.what());
      }
    }
    if (auto c = check_assumption_double_star(d.b(2), d.b(3), d.b(4), p1_zero)) {
      v.status = Status::Infinite;
      v.double_star_case = c;
      v.bounds = bounds;
      v.route = "Assumption (**) case " + std::to_string(*c) + " (Thm 1.4)";
      v.reasons.push_back({"b2 = " + std::to_string(d.b(2)) + ", b3 = " + std::to_string(d.b(3)) + ", b4 = " +
                               std::to_string(d.b(4)) + " > b2(b2+1)/2 = " + std::to_string(d.b(2) * (d.b(2) + 1) / 2),
                           "Assumption (**)"});
      v.reasons.push_back({"k = (b2-1) b3 = " + std::to_string(bounds.k) + ", l >= " + std::to_string(bounds.l_min) +
                               ", rank K pi_4(F) >= " + std::to_string(bounds.kpi4F_min) + " > 0",
                           "Lemma 2.1"});
      if (!p1_known) v.notes.push_back("p1 unknown: bounds assume p1 != 0");
      v.reasons.push_back({"T(X) is infinite", "Thm 1.4"});
      return v;
    }
    const auto fin = finiteness_conditions(d);
    if (fin.ok()) {
      v.status = Status::Finite;
      v.route = "H^4 = Sym^2 H^2, H^3 = 0, p1 != 0 (Thm 1.5)";
      v.reasons.push_back({"Sym^2 H^2 -> H^4 is an isomorphism (dimension " + std::to_string(d.b(4)) + ")",
                           "Thm 1.5 (1)"});
      v.reasons.push_back({"H^3 = 0", "Thm 1.5 (2)"});
      v.reasons.push_back({"p1 != 0", "Thm 1.5 (3)"});
      if (v.fibration)
        v.reasons.push_back({"rank pi_4(F) (x) Q = " + std::to_string(v.fibration->pi4F) + ", rank pi_3 = " +
                                 std::to_string(v.fibration->pi_B[3]),
                             "Lemma 2.1"});
      v.reasons.push_back({"T(X) is finite", "Thm 1.5"});
      return v;
    }
    for (const auto& f : fin.failures) v.notes.push_back("finiteness " + f);
    v.notes.push_back("Assumption (**) fails for b2 = " + std::to_string(d.b(2)) + ", b3 = " + std::to_string(d.b(3)) +
                      ", b4 = " + std::to_string(d.b(4)));
  }

  if (j_lattice_route(d, v)) return v;

  if (d.product && d.product->cp1_factors >= 1) {
    VerdictOptions base_options = options;
    base_options.fibration = false;
    Verdict base = torelli_verdict(*d.product->base, base_options);
    if (base.status == Status::Infinite && base.j_lattice_rank) {
      v.status = Status::Infinite;
      v.j_lattice_rank = base.j_lattice_rank;
      if (base.j_vector)
        v.j_vector = jd_product_with_cp1(H3Class{d.product->base->name, *base.j_vector}, d.product->cp1_factors).coords;
      v.route = "J_D(f × id) = J(f), lattice rank " + std::to_string(*v.j_lattice_rank) + " (Cor 1.3)";
      v.reasons.push_back({d.product->base->name + ": " + base.route, "Thm 1.2"});
      if (d.ring && d.p1) {
        const auto star = check_assumption_star(d, *d.p1);
        v.reasons.push_back({star ? "p1 is a combination of products of degree-2 classes"
                                  : "p1 is not a combination of products of degree-2 classes",
                             "Assumption (*)"});
      }
      v.reasons.push_back({"H^3(X) = H^3(X x (CP^1)^" + std::to_string(d.product->cp1_factors) +
                               ") carries the same lattice of J_D values",
                           "Cor 1.3"});
      return v;
    }
  }

  v.status = Status::Unknown;
  v.route = "no criterion applies (Thm 1.4, Thm 1.5, Thm 1.2)";
  if (d.dim != 6 && d.dim != 8) v.notes.push_back("dimension " + std::to_string(d.dim) + " is outside 6 and 8");
  if (!d.simply_connected) v.notes.push_back("not simply connected");
  for (const auto& n : v.notes) v.reasons.push_back({n, "Thm 1.4, Thm 1.5, Thm 1.2"});
  return v;
}

}  // namespace torelli
