#include "torelli/minimal_model.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

#include "torelli/echelon.hpp"

namespace torelli {

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto g : m) {
    h ^= g + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

Polynomial collect_terms(const std::unordered_map<Monomial, Rational, MonomialHash>& acc) {
  Polynomial out;
  out.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

// ------------------------------------------------------------------ FreeCDGA

std::size_t FreeCDGA::add_generator(std::string name, int degree, Polynomial differential) {
  if (degree < 2) throw std::invalid_argument("generator '" + name + "' has degree < 2");
  if (!gens_.empty() && degree < gens_.back().degree)
    throw std::invalid_argument("generators must be added in nondecreasing degree");
  if (names_.count(name)) throw std::invalid_argument("duplicate generator name '" + name + "'");
  const std::size_t index = gens_.size();
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (auto& [m, c] : differential) {
    for (auto g : m)
      if (g >= index) throw std::invalid_argument("differential of '" + name + "' uses a later generator");
    if (degree_of_indices(m) != degree + 1)
      throw std::invalid_argument("differential of '" + name + "' is not of degree " + std::to_string(degree + 1));
    acc[m] += c;
  }
  names_.emplace(name, index);
  gens_.push_back(Generator{std::move(name), degree});
  diff_.push_back(collect_terms(acc));
  return index;
}

int FreeCDGA::degree_of_indices(const Monomial& m) const {
  int deg = 0;
  for (auto g : m) deg += gens_.at(g).degree;
  return deg;
}

int FreeCDGA::degree(const Monomial& m) const { return degree_of_indices(m); }

std::pair<int, Monomial> FreeCDGA::normalize(Monomial word) const {
  int sign = 1;
  for (std::size_t i = 1; i < word.size(); ++i)
    for (std::size_t j = i; j > 0 && word[j - 1] > word[j]; --j) {
      if (gens_[word[j - 1]].odd() && gens_[word[j]].odd()) sign = -sign;
      std::swap(word[j - 1], word[j]);
    }
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i] == word[i - 1] && gens_[word[i]].odd()) return {0, {}};
  return {sign, std::move(word)};
}

std::pair<int, Monomial> FreeCDGA::multiply(const Monomial& a, const Monomial& b) const {
  Monomial word = a;
  word.insert(word.end(), b.begin(), b.end());
  return normalize(std::move(word));
}

void FreeCDGA::accumulate_d(const Monomial& m, const Rational& c,
                            std::unordered_map<Monomial, Rational, MonomialHash>& acc) const {
  int prefix_degree = 0;
  for (std::size_t t = 0; t < m.size(); ++t) {
    const Polynomial& dg = diff_[m[t]];
    if (!dg.empty()) {
      const int koszul = prefix_degree % 2 == 0 ? 1 : -1;
      for (const auto& [mono, coef] : dg) {
        Monomial word(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(t));
        word.insert(word.end(), mono.begin(), mono.end());
        word.insert(word.end(), m.begin() + static_cast<std::ptrdiff_t>(t) + 1, m.end());
        auto [sign, sorted] = normalize(std::move(word));
        if (sign == 0) continue;
        acc[sorted] += c * coef * (koszul * sign);
      }
    }
    prefix_degree += gens_[m[t]].degree;
  }
}

Polynomial FreeCDGA::d(const Monomial& m) const {
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  accumulate_d(m, 1, acc);
  return collect_terms(acc);
}

Polynomial FreeCDGA::d(const Polynomial& p) const {
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (const auto& [m, c] : p) accumulate_d(m, c, acc);
  return collect_terms(acc);
}

bool FreeCDGA::is_decomposable() const {
  return std::all_of(diff_.begin(), diff_.end(), [](const Polynomial& p) {
    return std::all_of(p.begin(), p.end(), [](const auto& term) { return term.first.size() >= 2; });
  });
}

bool FreeCDGA::is_square_zero() const {
  return std::all_of(diff_.begin(), diff_.end(), [this](const Polynomial& p) { return d(p).empty(); });
}

std::vector<std::size_t> FreeCDGA::generator_counts(int max_degree) const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0);
  for (const auto& g : gens_)
    if (g.degree <= max_degree) ++counts[static_cast<std::size_t>(g.degree)];
  return counts;
}

// -------------------------------------------------------------- monomials

namespace {

void enumerate(const std::vector<Generator>& gens, std::size_t start, int remaining, Monomial& current,
               std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t g = start; g < gens.size(); ++g) {
    const int deg = gens[g].degree;
    if (deg > remaining) break;
    current.push_back(static_cast<std::uint32_t>(g));
    enumerate(gens, gens[g].odd() ? g + 1 : g, remaining - deg, current, out);
    current.pop_back();
  }
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

std::vector<Monomial> monomial_basis(const std::vector<Generator>& gens, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial current;
  enumerate(gens, 0, degree, current, out);
  return out;
}

std::uint64_t count_monomials(const std::vector<Generator>& gens, int degree) {
  if (degree < 0) return 0;
  const auto n = static_cast<std::size_t>(degree);
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (const auto& g : gens) {
    const auto deg = static_cast<std::size_t>(g.degree);
    if (deg > n) break;
    if (g.odd()) {
      for (std::size_t t = n; t >= deg; --t) ways[t] = saturating_add(ways[t], ways[t - deg]);
    } else {
      for (std::size_t t = deg; t <= n; ++t) ways[t] = saturating_add(ways[t], ways[t - deg]);
    }
  }
  return ways[n];
}

// ------------------------------------------------------------ linear algebra

namespace {

using MonomialIndex = std::unordered_map<Monomial, std::size_t, MonomialHash>;

MonomialIndex index_of(const std::vector<Monomial>& basis) {
  MonomialIndex idx;
  idx.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

// Rows of the differential out of `source`, one per target monomial that
// actually occurs, in first-appearance order.
std::vector<SparseVector> differential_rows(const FreeCDGA& cdga, const std::vector<Monomial>& source) {
  MonomialIndex target;
  std::vector<std::vector<SparseVector::Entry>> rows;
  for (std::size_t s = 0; s < source.size(); ++s)
    for (auto& [m, c] : cdga.d(source[s])) {
      auto [it, inserted] = target.try_emplace(m, rows.size());
      if (inserted) rows.emplace_back();
      rows[it->second].emplace_back(s, c);
    }
  std::vector<SparseVector> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

// Coboundaries d(A^{k-1}) in coordinates of the degree-k basis.
std::vector<SparseVector> coboundaries(const FreeCDGA& cdga, const std::vector<Monomial>& lower,
                                       const MonomialIndex& index) {
  std::vector<SparseVector> out;
  for (const auto& m : lower) {
    std::vector<SparseVector::Entry> entries;
    for (auto& [t, c] : cdga.d(m)) {
      auto it = index.find(t);
      if (it == index.end()) throw std::logic_error("coboundary leaves the monomial basis");
      entries.emplace_back(it->second, c);
    }
    SparseVector v(std::move(entries));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

struct Quotient {
  std::vector<SparseVector> kernel;        // one per free column
  std::vector<std::size_t> free_columns;   // parallel to kernel
  std::vector<std::size_t> complement;     // positions in `kernel` spanning kernel / image
};

// ker(rows) / span(image) for image inside the kernel.
Quotient quotient(const std::vector<SparseVector>& rows, std::size_t columns, const std::vector<SparseVector>& image) {
  EchelonSpace space;
  for (const auto& r : rows) space.insert(r);
  space.reduce_fully();
  Quotient q;
  q.kernel = space.kernel_basis(columns);
  q.free_columns = space.free_columns(columns);

  std::unordered_map<std::size_t, std::size_t> position;
  for (std::size_t i = 0; i < q.free_columns.size(); ++i) position.emplace(q.free_columns[i], i);
  // Kernel elements are determined by their free coordinates.
  EchelonSpace hit;
  for (const auto& b : image) {
    std::vector<SparseVector::Entry> restricted;
    for (const auto& [j, x] : b.entries())
      if (auto it = position.find(j); it != position.end()) restricted.emplace_back(it->second, x);
    hit.insert(SparseVector(std::move(restricted)));
  }
  for (std::size_t i = 0; i < q.free_columns.size(); ++i)
    if (!hit.is_pivot(i)) q.complement.push_back(i);
  return q;
}

Polynomial to_polynomial(const SparseVector& v, const std::vector<Monomial>& basis) {
  Polynomial p;
  p.reserve(v.nnz());
  for (const auto& [i, c] : v.entries()) p.emplace_back(basis[i], c);
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return p;
}

void require_square_zero_through(const FreeCDGA& cdga, int degree) {
  for (std::size_t g = 0; g < cdga.size(); ++g) {
    if (cdga.generators()[g].degree > degree) break;
    if (!cdga.d(cdga.differential(g)).empty())
      throw std::domain_error("differential is not square-zero on generator '" + cdga.generators()[g].name + "'");
  }
}

}  // namespace

CohomologyResult cdga_cohomology(const FreeCDGA& cdga, int degree) {
  require_square_zero_through(cdga, degree + 1);
  CohomologyResult out;
  if (degree < 0) return out;
  if (degree == 0) {
    out.dimension = 1;
    out.representatives.push_back(Polynomial{{Monomial{}, Rational(1)}});
    return out;
  }
  const auto basis = monomial_basis(cdga.generators(), degree);
  const auto lower = monomial_basis(cdga.generators(), degree - 1);
  const auto q = quotient(differential_rows(cdga, basis), basis.size(), coboundaries(cdga, lower, index_of(basis)));
  out.dimension = q.complement.size();
  for (auto i : q.complement) out.representatives.push_back(to_polynomial(q.kernel[i], basis));
  return out;
}

// ------------------------------------------------------------ model builder

namespace {

std::string generator_name(int degree, bool closed, std::map<std::string, std::size_t>& counters) {
  std::string prefix;
  if (closed) {
    prefix = degree == 2 ? "x" : degree == 3 ? "y" : degree == 4 ? "u" : "a" + std::to_string(degree);
  } else {
    prefix = degree == 3 ? "y" : degree == 4 ? "z" : "w" + std::to_string(degree);
  }
  return prefix + "_" + std::to_string(++counters[prefix]);
}

class ModelBuilder {
 public:
  ModelBuilder(const GradedRing& ring, const ModelOptions& options) : ring_(ring), options_(options) {}

  // Image in H of a monomial; nullopt when it vanishes.
  std::optional<RingElement> image(const Monomial& m) const {
    const int deg = model_.degree(m);
    if (deg > ring_.top_degree()) return std::nullopt;
    RingElement acc = ring_.unit();
    for (auto g : m) {
      const RingElement& x = images_[g];
      if (x.is_zero()) return std::nullopt;
      acc = ring_.multiply(acc, x);
    }
    if (acc.is_zero()) return std::nullopt;
    return acc;
  }

  std::vector<Monomial> basis(int degree) const {
    const auto count = count_monomials(model_.generators(), degree);
    if (count > options_.monomial_limit)
      throw std::length_error("degree-" + std::to_string(degree) + " monomial space has " + std::to_string(count) +
                              " elements, above the limit of " + std::to_string(options_.monomial_limit));
    return monomial_basis(model_.generators(), degree);
  }

  // Step (a): closed generators making H^k(model) -> H^k onto.
  void surject(int k) {
    const std::size_t bk = ring_.dim(k);
    if (bk == 0) return;
    const auto source = basis(k);
    const auto q = quotient(differential_rows(model_, source), source.size(), {});
    EchelonSpace hit;
    for (const auto& z : q.kernel) {
      std::unordered_map<std::size_t, Rational> acc;
      for (const auto& [i, c] : z.entries())
        if (auto x = image(source[i])) add_scaled(acc, c, SparseVector::from_dense(x->coeffs));
      hit.insert(torelli::collect(acc));
    }
    for (std::size_t j = 0; j < bk && hit.rank() < bk; ++j) {
      if (!hit.insert(SparseVector::unit(j))) continue;
      model_.add_generator(generator_name(k, true, counters_), k);
      images_.push_back(ring_.basis(k, j));
    }
  }

  // Step (b): generators of degree k killing ker(H^{k+1}(model) -> H^{k+1}).
  void kill(int k) {
    const auto target = basis(k + 1);
    if (target.empty()) return;
    auto rows = differential_rows(model_, target);
    const std::size_t b = ring_.dim(k + 1);
    if (b > 0) {
      std::vector<std::vector<SparseVector::Entry>> constraint(b);
      for (std::size_t i = 0; i < target.size(); ++i)
        if (auto x = image(target[i]))
          for (std::size_t r = 0; r < b; ++r)
            if (x->coeffs[r] != 0) constraint[r].emplace_back(i, x->coeffs[r]);
      for (auto& c : constraint) rows.emplace_back(std::move(c));
    }
    const auto lower = basis(k);
    const auto q = quotient(rows, target.size(), coboundaries(model_, lower, index_of(target)));
    for (auto i : q.complement) {
      model_.add_generator(generator_name(k, false, counters_), k, to_polynomial(q.kernel[i], target));
      images_.push_back(ring_.zero(k));
    }
  }

  MinimalModelResult finish(int max_degree) {
    MinimalModelResult r;
    r.max_degree = max_degree;
    const auto n = static_cast<std::size_t>(max_degree);
    r.homotopy_ranks.assign(n + 1, 0);
    r.hurewicz_kernel.assign(n + 1, 0);
    r.hurewicz.assign(n + 1, RationalMatrix());
    r.quasi_iso.assign(n + 2, RationalMatrix());

    std::vector<std::vector<RationalVector>> hrows(n + 1);
    for (std::size_t g = 0; g < model_.size(); ++g) {
      const auto k = static_cast<std::size_t>(model_.generators()[g].degree);
      ++r.homotopy_ranks[k];
      if (!model_.differential(g).empty()) ++r.hurewicz_kernel[k];
      hrows[k].push_back(images_[g].coeffs);
    }
    for (std::size_t k = 2; k <= n; ++k)
      r.hurewicz[k] = RationalMatrix::from_rows(hrows[k], ring_.dim(static_cast<int>(k)));

    for (int k = 2; k <= max_degree + 1; ++k) {
      const auto h = cdga_cohomology(model_, k);
      std::vector<RationalVector> rows;
      for (const auto& rep : h.representatives) {
        RingElement sum = ring_.zero(k);
        if (k <= ring_.top_degree())
          for (const auto& [m, c] : rep)
            if (auto x = image(m)) sum = sum + c * *x;
        rows.push_back(sum.coeffs);
      }
      RationalMatrix qi = RationalMatrix::from_rows(rows, ring_.dim(k));
      const std::size_t rk = rank(qi);
      const bool ok = k <= max_degree ? (h.dimension == ring_.dim(k) && rk == h.dimension) : rk == h.dimension;
      if (!ok)
        throw std::logic_error("constructed model fails the quasi-isomorphism check in degree " + std::to_string(k));
      r.quasi_iso[static_cast<std::size_t>(k)] = std::move(qi);
    }
    r.model = std::move(model_);
    r.generator_images = std::move(images_);
    return r;
  }

 private:
  const GradedRing& ring_;
  const ModelOptions& options_;
  FreeCDGA model_;
  std::vector<RingElement> images_;
  std::map<std::string, std::size_t> counters_;
};

}  // namespace

MinimalModelResult build_minimal_model(const GradedRing& ring, int max_degree, const ModelOptions& options) {
  if (ring.dim(1) != 0) throw std::invalid_argument("ring is not simply connected (b_1 != 0)");
  if (max_degree < 2 || max_degree > options.degree_limit)
    throw std::invalid_argument("max degree " + std::to_string(max_degree) + " outside the admissible range [2, " +
                                std::to_string(options.degree_limit) + "]");
  std::vector<std::string> warnings;
  for (auto& f : poincare_validate(ring).failures) warnings.push_back("Poincare duality: " + f);

  ModelBuilder builder(ring, options);
  for (int k = 2; k <= max_degree; ++k) {
    builder.surject(k);
    builder.kill(k);
  }
  auto result = builder.finish(max_degree);
  result.warnings = std::move(warnings);
  if (!result.model.is_square_zero()) throw std::logic_error("constructed model has d^2 != 0");
  if (!result.model.is_decomposable()) throw std::logic_error("constructed model is not minimal");
  return result;
}

std::size_t hurewicz_kernel_rank(const MinimalModelResult& result, int k) {
  if (k > result.max_degree) throw std::out_of_range("degree beyond the model's range");
  if (k < 2) return 0;
  return result.hurewicz_kernel[static_cast<std::size_t>(k)];
}

std::string format_monomial(const FreeCDGA& cdga, const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < m.size()) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty()) out += "*";
    out += cdga.generators()[m[i]].name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string format_polynomial(const FreeCDGA& cdga, const Polynomial& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : p) {
    std::string coef = to_string(c);
    if (out.empty()) {
      if (c == -1) out += "-";
      else if (c != 1) out += coef + "*";
    } else if (c < 0) {
      out += " - ";
      if (c != -1) out += to_string(Rational(-c)) + "*";
    } else {
      out += " + ";
      if (c != 1) out += coef + "*";
    }
    out += format_monomial(cdga, m);
  }
  return out;
}

}  // namespace torelli
