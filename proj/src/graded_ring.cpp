#include "torelli/graded_ring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace torelli {

namespace {

int koszul(int p, int q) { return ((p * q) % 2 == 0) ? 1 : -1; }

std::string degree_pair(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

SparseVector scaled(SparseVector v, int sign) {
  if (sign < 0) v.scale(-1);
  return v;
}

}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
  if (a.degree != b.degree || a.coeffs.size() != b.coeffs.size())
    throw std::invalid_argument("adding ring elements of different degree");
  RingElement out = a;
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + Rational(-1) * b; }

RingElement operator*(const Rational& s, const RingElement& a) {
  RingElement out = a;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

std::size_t GradedRing::dim(int degree) const {
  if (degree < 0 || degree > top_degree()) return 0;
  return dims_[static_cast<std::size_t>(degree)];
}

RingElement GradedRing::zero(int degree) const { return RingElement{degree, RationalVector(dim(degree))}; }

RingElement GradedRing::basis(int degree, std::size_t index) const {
  if (index >= dim(degree))
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range in degree " +
                            std::to_string(degree));
  RingElement e = zero(degree);
  e.coeffs[index] = 1;
  return e;
}

RingElement GradedRing::element(int degree, RationalVector coeffs) const {
  if (degree < 0 || degree > top_degree() || coeffs.size() != dim(degree))
    throw std::invalid_argument("coefficient vector does not fit degree " + std::to_string(degree));
  return RingElement{degree, std::move(coeffs)};
}

const SparseVector* GradedRing::lookup(int p, std::size_t i, int q, std::size_t j) const {
  auto t = tables_.find({p, q});
  if (t == tables_.end()) return nullptr;
  auto e = t->second.entries.find(static_cast<std::uint64_t>(i) * t->second.right_dim + j);
  return e == t->second.entries.end() ? nullptr : &e->second;
}

SparseVector GradedRing::basis_product(int p, std::size_t i, int q, std::size_t j) const {
  if (p + q > top_degree()) throw std::domain_error("product degree " + std::to_string(p + q) + " exceeds top degree");
  if (i >= dim(p) || j >= dim(q)) throw std::out_of_range("basis index out of range in product");
  if (p == 0) return SparseVector::unit(j);
  if (q == 0) return SparseVector::unit(i);
  int sign = 1;
  if (p > q) {
    sign = koszul(p, q);
    std::swap(p, q);
    std::swap(i, j);
  } else if (p == q && i > j) {
    sign = koszul(p, q);
    std::swap(i, j);
  }
  const SparseVector* v = lookup(p, i, q, j);
  return v ? scaled(*v, sign) : SparseVector{};
}

RingElement GradedRing::multiply(const RingElement& a, const RingElement& b) const {
  const int p = a.degree;
  const int q = b.degree;
  if (p + q > top_degree())
    throw std::domain_error("product degree " + std::to_string(p + q) + " exceeds top degree " +
                            std::to_string(top_degree()));
  if (a.coeffs.size() != dim(p) || b.coeffs.size() != dim(q))
    throw std::invalid_argument("ring element does not match the ring's dimensions");
  RingElement out = zero(p + q);
  if (p == 0) return a.coeffs[0] * b;
  if (q == 0) return b.coeffs[0] * a;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j] == 0) continue;
      const Rational c = a.coeffs[i] * b.coeffs[j];
      const SparseVector prod = basis_product(p, i, q, j);
      for (const auto& [k, v] : prod.entries()) out.coeffs[k] += c * v;
    }
  }
  return out;
}

Rational GradedRing::evaluate(const RingElement& x) const {
  if (x.degree != top_degree()) return 0;
  Rational s = 0;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) s += x.coeffs[i] * fundamental_[i];
  return s;
}

std::vector<std::pair<int, int>> GradedRing::product_degrees() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, table] : tables_)
    if (!table.entries.empty()) out.push_back(key);
  return out;
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, SparseVector>> GradedRing::table_entries(int p,
                                                                                                     int q) const {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, SparseVector>> out;
  auto t = tables_.find({p, q});
  if (t == tables_.end()) return out;
  for (const auto& [key, v] : t->second.entries)
    out.push_back({{static_cast<std::size_t>(key / t->second.right_dim),
                    static_cast<std::size_t>(key % t->second.right_dim)},
                   v});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool operator==(const GradedRing& a, const GradedRing& b) {
  if (a.dims_ != b.dims_ || a.fundamental_ != b.fundamental_) return false;
  if (a.product_degrees() != b.product_degrees()) return false;
  for (const auto& [p, q] : a.product_degrees())
    if (a.table_entries(p, q) != b.table_entries(p, q)) return false;
  return true;
}

GradedRing GradedRing::point() { return Builder({1}).set_fundamental({1}).build(); }

GradedRing GradedRing::sphere(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  std::vector<std::size_t> dims(static_cast<std::size_t>(n) + 1, 0);
  dims.front() = 1;
  dims.back() = 1;
  return Builder(dims).set_fundamental({1}).build();
}

GradedRing GradedRing::complex_projective(int n) {
  if (n < 1) throw std::invalid_argument("complex projective dimension must be positive");
  std::vector<std::size_t> dims(2 * static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k <= n; ++k) dims[2 * static_cast<std::size_t>(k)] = 1;
  Builder b(dims);
  for (int a = 1; a <= n; ++a)
    for (int c = a; a + c <= n; ++c) b.set_product(2 * a, 0, 2 * c, 0, RationalVector{1});
  return b.set_fundamental({1}).build();
}

// ---------------------------------------------------------------- Builder

GradedRing::Builder::Builder(std::vector<std::size_t> dims) {
  if (dims.empty()) throw std::invalid_argument("a graded ring needs at least degree 0");
  ring_.dims_ = std::move(dims);
  const int n = ring_.top_degree();
  for (int p = 1; p <= n; ++p)
    for (int q = p; p + q <= n; ++q) ring_.tables_[{p, q}].right_dim = std::max<std::size_t>(ring_.dim(q), 1);
}

GradedRing::Builder& GradedRing::Builder::set_product(int p, std::size_t i, int q, std::size_t j,
                                                      const RationalVector& value) {
  if (value.size() != ring_.dim(p + q))
    throw std::invalid_argument("product " + degree_pair(p, q) + " value has length " + std::to_string(value.size()) +
                                ", expected " + std::to_string(ring_.dim(p + q)));
  return set_product(p, i, q, j, SparseVector::from_dense(value));
}

GradedRing::Builder& GradedRing::Builder::set_product(int p, std::size_t i, int q, std::size_t j,
                                                      const SparseVector& value) {
  const int n = ring_.top_degree();
  if (p < 1 || q < 1) throw std::invalid_argument("products with degree 0 are fixed by the unit");
  if (p + q > n) throw std::invalid_argument("product " + degree_pair(p, q) + " exceeds top degree");
  if (i >= ring_.dim(p) || j >= ring_.dim(q))
    throw std::invalid_argument("basis index out of range in product " + degree_pair(p, q));
  if (!value.empty() && value.entries().back().first >= ring_.dim(p + q))
    throw std::invalid_argument("product " + degree_pair(p, q) + " value index out of range");
  int sign = 1;
  if (p > q) {
    sign = koszul(p, q);
    std::swap(p, q);
    std::swap(i, j);
  } else if (p == q && i > j) {
    sign = koszul(p, q);
    std::swap(i, j);
  }
  SparseVector v = scaled(value, sign);
  if (p == q && i == j && p % 2 == 1 && !v.empty())
    throw std::invalid_argument("odd-degree class squares to a nonzero element in " + degree_pair(p, q) +
                                ", violating graded commutativity");
  Table& t = ring_.tables_.at({p, q});
  const std::uint64_t key = static_cast<std::uint64_t>(i) * t.right_dim + j;
  auto [pos, inserted] = t.entries.try_emplace(key, v);
  if (!inserted && pos->second != v)
    throw std::invalid_argument("products in " + degree_pair(p, q) + " at (" + std::to_string(i) + "," +
                                std::to_string(j) + ") violate graded commutativity");
  return *this;
}

GradedRing::Builder& GradedRing::Builder::set_fundamental(RationalVector functional) {
  ring_.fundamental_ = std::move(functional);
  has_fundamental_ = true;
  return *this;
}

namespace {

SparseVector product_of(const GradedRing& r, int p, const SparseVector& x, int q, std::size_t k) {
  std::unordered_map<std::size_t, Rational> acc;
  for (const auto& [t, c] : x.entries()) add_scaled(acc, c, r.basis_product(p, t, q, k));
  return collect(acc);
}

SparseVector product_of(const GradedRing& r, int p, std::size_t i, int q, const SparseVector& y) {
  std::unordered_map<std::size_t, Rational> acc;
  for (const auto& [s, c] : y.entries()) add_scaled(acc, c, r.basis_product(p, i, q, s));
  return collect(acc);
}

void check_associativity(const GradedRing& r) {
  const int n = r.top_degree();
  for (int p = 1; p <= n; ++p)
    for (int q = 1; p + q <= n; ++q)
      for (int s = 1; p + q + s <= n; ++s) {
        if (r.dim(p) == 0 || r.dim(q) == 0 || r.dim(s) == 0) continue;
        std::vector<SparseVector> right(r.dim(q) * r.dim(s));
        for (std::size_t j = 0; j < r.dim(q); ++j)
          for (std::size_t k = 0; k < r.dim(s); ++k) right[j * r.dim(s) + k] = r.basis_product(q, j, s, k);
        for (std::size_t i = 0; i < r.dim(p); ++i)
          for (std::size_t j = 0; j < r.dim(q); ++j) {
            SparseVector left = r.basis_product(p, i, q, j);
            for (std::size_t k = 0; k < r.dim(s); ++k) {
              SparseVector lhs = product_of(r, p + q, left, s, k);
              SparseVector rhs = product_of(r, p, i, q + s, right[j * r.dim(s) + k]);
              if (lhs != rhs)
                throw std::invalid_argument("multiplication is not associative on basis triple of degrees (" +
                                            std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(s) +
                                            ") at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(k) + ")");
            }
          }
      }
}

}  // namespace

GradedRing GradedRing::Builder::build(bool verify_associativity) const {
  GradedRing r = ring_;
  if (r.dims_[0] != 1) throw std::invalid_argument("degree 0 must be one-dimensional (b_0 = 1)");
  if (!has_fundamental_) throw std::invalid_argument("missing fundamental functional");
  if (r.fundamental_.size() != r.dims_.back())
    throw std::invalid_argument("fundamental functional has length " + std::to_string(r.fundamental_.size()) +
                                ", expected b_n = " + std::to_string(r.dims_.back()));
  for (auto& [key, table] : r.tables_) std::erase_if(table.entries, [](const auto& e) { return e.second.empty(); });
  if (verify_associativity) check_associativity(r);
  return r;
}

// ------------------------------------------------------------- operations

namespace {

// Pairing H^k x H^{n-k} -> Q as sparse rows indexed by the degree-k basis.
std::vector<SparseVector> pairing_rows(const GradedRing& ring, int k) {
  const int n = ring.top_degree();
  const int l = n - k;
  std::vector<std::vector<SparseVector::Entry>> rows(ring.dim(k));
  auto fund = [&](const SparseVector& v) {
    Rational s = 0;
    for (const auto& [t, c] : v.entries()) s += c * ring.fundamental()[t];
    return s;
  };
  if (k == 0 || l == 0) {
    for (std::size_t i = 0; i < ring.dim(k); ++i)
      for (std::size_t j = 0; j < ring.dim(l); ++j) {
        Rational x = fund(ring.basis_product(k, i, l, j));
        if (x != 0) rows[i].emplace_back(j, x);
      }
  } else {
    const int p = std::min(k, l);
    const int q = std::max(k, l);
    for (const auto& [ij, v] : ring.table_entries(p, q)) {
      const auto [i, j] = ij;
      Rational x = fund(v);
      if (x == 0) continue;
      if (k <= l) rows[i].emplace_back(j, x);
      if (k >= l && (k != l || i != j)) rows[j].emplace_back(i, koszul(p, q) * x);
    }
  }
  std::vector<SparseVector> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

}  // namespace

RationalMatrix pairing_matrix(const GradedRing& ring, int k) {
  const int l = ring.top_degree() - k;
  RationalMatrix m(ring.dim(k), ring.dim(l));
  auto rows = pairing_rows(ring, k);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, x] : rows[i].entries()) m(i, j) = x;
  return m;
}

ValidationReport poincare_validate(const GradedRing& ring) {
  ValidationReport report;
  const int n = ring.top_degree();
  for (int k = 0; k <= n; ++k)
    if (ring.dim(k) != ring.dim(n - k))
      report.failures.push_back("b_" + std::to_string(k) + " = " + std::to_string(ring.dim(k)) + " differs from b_" +
                                std::to_string(n - k) + " = " + std::to_string(ring.dim(n - k)));
  if (ring.dim(n) != 1) report.failures.push_back("top degree is not one-dimensional");
  if (is_zero(ring.fundamental())) report.failures.push_back("fundamental functional is zero");
  for (int k = 0; 2 * k <= n; ++k) {
    if (ring.dim(k) != ring.dim(n - k)) continue;
    EchelonSpace space;
    for (const auto& row : pairing_rows(ring, k)) space.insert(row);
    if (space.rank() != ring.dim(k))
      report.failures.push_back("pairing H^" + std::to_string(k) + " x H^" + std::to_string(n - k) +
                                " is degenerate (rank " + std::to_string(space.rank()) + " of " +
                                std::to_string(ring.dim(k)) + ")");
  }
  return report;
}

RationalMatrix sym2_matrix(const GradedRing& ring) {
  if (ring.top_degree() < 4) throw std::invalid_argument("Sym^2 H^2 -> H^4 needs top degree at least 4");
  const std::size_t b2 = ring.dim(2);
  RationalMatrix m(b2 * (b2 + 1) / 2, ring.dim(4));
  std::size_t row = 0;
  for (std::size_t i = 0; i < b2; ++i)
    for (std::size_t j = i; j < b2; ++j, ++row) {
      const SparseVector prod = ring.basis_product(2, i, 2, j);
      for (const auto& [k, x] : prod.entries()) m(row, k) = x;
    }
  return m;
}

std::size_t kunneth_index(const GradedRing& a, const GradedRing& b, int p, std::size_t i, int q, std::size_t j) {
  std::size_t offset = 0;
  for (int pp = 0; pp < p; ++pp) offset += a.dim(pp) * b.dim(p + q - pp);
  return offset + i * b.dim(q) + j;
}

namespace {

struct BasisProduct {
  int p;
  std::size_t i;
  int q;
  std::size_t j;
  SparseVector value;
};

// Every nonzero product of two basis elements, unit included, both orders.
std::vector<BasisProduct> all_products(const GradedRing& r) {
  std::vector<BasisProduct> out;
  const int n = r.top_degree();
  for (int q = 0; q <= n; ++q)
    for (std::size_t j = 0; j < r.dim(q); ++j) {
      out.push_back({0, 0, q, j, SparseVector::unit(j)});
      if (q > 0) out.push_back({q, j, 0, 0, SparseVector::unit(j)});
    }
  for (const auto& [p, q] : r.product_degrees())
    for (const auto& [ij, v] : r.table_entries(p, q)) {
      const auto [i, j] = ij;
      out.push_back({p, i, q, j, v});
      if (p != q || i != j) out.push_back({q, j, p, i, scaled(v, koszul(p, q))});
    }
  return out;
}

}  // namespace

GradedRing kunneth_product(const GradedRing& a, const GradedRing& b) {
  const int na = a.top_degree();
  const int nb = b.top_degree();
  std::vector<std::size_t> dims(static_cast<std::size_t>(na + nb) + 1, 0);
  for (int p = 0; p <= na; ++p)
    for (int q = 0; q <= nb; ++q) dims[static_cast<std::size_t>(p + q)] += a.dim(p) * b.dim(q);
  GradedRing::Builder builder(dims);

  const auto pa = all_products(a);
  const auto pb = all_products(b);
  for (const auto& x : pa)
    for (const auto& y : pb) {
      const int k1 = x.p + y.p;
      const int k2 = x.q + y.q;
      if (k1 == 0 || k2 == 0) continue;
      const std::size_t idx1 = kunneth_index(a, b, x.p, x.i, y.p, y.i);
      const std::size_t idx2 = kunneth_index(a, b, x.q, x.j, y.q, y.j);
      if (k1 > k2 || (k1 == k2 && idx1 > idx2)) continue;
      // (a1 (x) b1)(a2 (x) b2) = (-1)^{|b1||a2|} a1a2 (x) b1b2
      const int sign = koszul(y.p, x.q);
      std::vector<SparseVector::Entry> entries;
      for (const auto& [s, alpha] : x.value.entries())
        for (const auto& [t, beta] : y.value.entries())
          entries.emplace_back(kunneth_index(a, b, x.p + x.q, s, y.p + y.q, t), sign * alpha * beta);
      builder.set_product(k1, idx1, k2, idx2, SparseVector(std::move(entries)));
    }

  RationalVector fund(dims.back());
  for (std::size_t i = 0; i < a.dim(na); ++i)
    for (std::size_t j = 0; j < b.dim(nb); ++j)
      fund[kunneth_index(a, b, na, i, nb, j)] = a.fundamental()[i] * b.fundamental()[j];
  builder.set_fundamental(std::move(fund));
  return builder.build(false);
}

GradedRing connected_sum(const GradedRing& a, const GradedRing& b) {
  const int n = a.top_degree();
  if (b.top_degree() != n) throw std::invalid_argument("connected sum needs equal top degrees");
  if (n < 1 || a.dim(n) != 1 || b.dim(n) != 1) throw std::invalid_argument("connected sum needs b_n = 1 on both sides");
  if (a.fundamental()[0] == 0 || b.fundamental()[0] == 0)
    throw std::invalid_argument("connected sum needs nonzero fundamental functionals");
  std::vector<std::size_t> dims(static_cast<std::size_t>(n) + 1);
  dims.front() = 1;
  dims.back() = 1;
  for (int k = 1; k < n; ++k) dims[static_cast<std::size_t>(k)] = a.dim(k) + b.dim(k);
  GradedRing::Builder builder(dims);

  auto add_summand = [&](const GradedRing& r, bool second) {
    auto shift = [&](int k, std::size_t i) -> std::size_t { return (second && k < n) ? a.dim(k) + i : i; };
    for (const auto& [p, q] : r.product_degrees())
      for (const auto& [ij, v] : r.table_entries(p, q)) {
        std::vector<SparseVector::Entry> entries;
        for (const auto& [t, c] : v.entries())
          entries.emplace_back(shift(p + q, t), p + q == n ? c * r.fundamental()[0] : c);
        builder.set_product(p, shift(p, ij.first), q, shift(q, ij.second), SparseVector(std::move(entries)));
      }
  };
  add_summand(a, false);
  add_summand(b, true);
  builder.set_fundamental({1});
  return builder.build(false);
}

std::vector<long long> betti_convolution(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace torelli
