#include "torelli/catalog.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "torelli/hypersurface.hpp"

namespace torelli {

using nlohmann::json;

bool operator==(const ManifoldDescriptor& a, const ManifoldDescriptor& b) {
  if (a.name != b.name || a.dim != b.dim || a.simply_connected != b.simply_connected || a.betti != b.betti ||
      a.ring != b.ring || a.p1 != b.p1 || a.provenance != b.provenance || a.hypersurface != b.hypersurface)
    return false;
  if (a.product.has_value() != b.product.has_value()) return false;
  if (!a.product) return true;
  return a.product->cp1_factors == b.product->cp1_factors && *a.product->base == *b.product->base;
}

namespace {

std::vector<long long> to_betti(const std::vector<std::size_t>& dims) {
  return {dims.begin(), dims.end()};
}

}  // namespace

// ------------------------------------------------------------------ builtins

ManifoldDescriptor hypersurface_threefold(long long d) {
  if (d < 1) throw std::invalid_argument("hypersurface degree must be >= 1");
  const HypersurfaceData data = chern_data(3, d);
  const auto& betti = *data.betti;
  const auto b3 = static_cast<std::size_t>(betti[3]);

  // Basis: H^2 = z, H^4 = g, H^6 = pt, H^3 symplectic a_1..a_{b3}.
  GradedRing::Builder builder({1, 0, 1, b3, 1, 0, 1});
  builder.set_product(2, 0, 2, 0, RationalVector{Rational(static_cast<long>(d))});
  builder.set_product(2, 0, 4, 0, RationalVector{1});
  for (std::size_t i = 0; i + 1 < b3; i += 2) builder.set_product(3, i, 3, i + 1, SparseVector::unit(0));
  builder.set_fundamental({1});

  ManifoldDescriptor m;
  m.name = "X(" + std::to_string(d) + ")";
  m.dim = 6;
  m.betti = betti;
  m.ring = builder.build(false);
  m.p1 = RingElement{4, {data.p1_coeff * static_cast<long>(d)}};
  m.provenance = {"Thm 1.2", "Cor 1.3"};
  m.hypersurface = HypersurfaceTag{3, d};
  return m;
}

ManifoldDescriptor complex_projective_space(int n) {
  if (n < 1) throw std::invalid_argument("CP^n needs n >= 1");
  ManifoldDescriptor m;
  m.name = "CP" + std::to_string(n);
  m.dim = 2 * n;
  m.ring = GradedRing::complex_projective(n);
  m.betti = to_betti(m.ring->dims());
  m.p1 = RingElement{4, RationalVector(m.ring->dim(4), Rational(n + 1))};
  m.provenance = {"Cor 1.3"};
  return m;
}

namespace {

// Diagonal form of signature (3, 20) on H^2 of the Hilbert square.
std::vector<Rational> k3_form() {
  std::vector<Rational> q(23, Rational(-1));
  q[0] = q[1] = q[2] = 1;
  q[22] = -2;
  return q;
}

}  // namespace

ManifoldDescriptor hilbert_square_k3() {
  constexpr std::size_t b2 = 23;
  const auto q = k3_form();
  auto qq = [&](std::size_t a, std::size_t b) { return a == b ? q[a] : Rational(0); };
  auto F = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return Rational(qq(a, b) * qq(c, d) + qq(a, c) * qq(b, d) + qq(a, d) * qq(b, c));
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> pair_index(b2, std::vector<std::size_t>(b2));
  for (std::size_t a = 0; a < b2; ++a)
    for (std::size_t b = a; b < b2; ++b) {
      pair_index[a][b] = pair_index[b][a] = pairs.size();
      pairs.emplace_back(a, b);
    }
  const std::size_t b4 = pairs.size();

  GradedRing::Builder builder({1, 0, b2, 0, b4, 0, b2, 0, 1});
  for (std::size_t a = 0; a < b2; ++a)
    for (std::size_t b = a; b < b2; ++b) builder.set_product(2, a, 2, b, SparseVector::unit(pair_index[a][b]));
  for (std::size_t a = 0; a < b2; ++a)
    for (std::size_t s = 0; s < b4; ++s) {
      const auto [b, c] = pairs[s];
      std::vector<SparseVector::Entry> entries;
      for (std::size_t d = 0; d < b2; ++d)
        if (Rational x = F(a, b, c, d); x != 0) entries.emplace_back(d, x);
      builder.set_product(2, a, 4, s, SparseVector(std::move(entries)));
    }
  for (std::size_t a = 0; a < b2; ++a) builder.set_product(2, a, 6, a, SparseVector::unit(0));
  for (std::size_t s = 0; s < b4; ++s)
    for (std::size_t t = s; t < b4; ++t) {
      const auto [a, b] = pairs[s];
      const auto [c, d] = pairs[t];
      if (Rational x = F(a, b, c, d); x != 0) builder.set_product(4, s, 4, t, RationalVector{x});
    }
  builder.set_fundamental({1});

  // c2 = (6/5) q^dual, p1 = -2 c2.
  RationalVector p1(b4);
  for (std::size_t a = 0; a < b2; ++a) p1[pair_index[a][a]] = Rational(-12, 5) / q[a];

  ManifoldDescriptor m;
  m.name = "K3^[2]";
  m.dim = 8;
  m.ring = builder.build(false);
  m.betti = to_betti(m.ring->dims());
  m.p1 = RingElement{4, std::move(p1)};
  m.provenance = {"Thm 1.5", "Cor 1.6"};
  return m;
}

ManifoldDescriptor generalized_kummer_k2t() {
  ManifoldDescriptor m;
  m.name = "K2T";
  m.dim = 8;
  m.betti = {1, 0, 7, 8, 108, 8, 7, 0, 1};
  m.provenance = {"Thm 1.4"};
  return m;
}

ManifoldDescriptor s2xs4_sum_s3xs3() {
  ManifoldDescriptor m;
  m.name = "S2xS4#S3xS3";
  m.dim = 6;
  m.ring = connected_sum(kunneth_product(GradedRing::sphere(2), GradedRing::sphere(4)),
                         kunneth_product(GradedRing::sphere(3), GradedRing::sphere(3)));
  m.betti = to_betti(m.ring->dims());
  m.p1 = m.ring->zero(4);
  m.provenance = {"Thm 1.2"};
  return m;
}

ManifoldDescriptor sphere_manifold(int n) {
  if (n < 1) throw std::invalid_argument("S^n needs n >= 1");
  ManifoldDescriptor m;
  m.name = "S" + std::to_string(n);
  m.dim = n;
  m.simply_connected = n >= 2;
  m.ring = GradedRing::sphere(n);
  m.betti = to_betti(m.ring->dims());
  m.p1 = m.ring->zero(4);
  return m;
}

ManifoldDescriptor product_with_cp1(const ManifoldDescriptor& base, int r) {
  if (r < 1) throw std::invalid_argument("product needs at least one CP^1 factor");
  ManifoldDescriptor m;
  m.name = base.name + "xCP1" + (r > 1 ? "^" + std::to_string(r) : "");
  m.dim = base.dim + 2 * r;
  m.simply_connected = base.simply_connected;
  m.provenance = base.provenance;
  m.betti = base.betti;
  const GradedRing cp1 = GradedRing::complex_projective(1);
  std::optional<GradedRing> ring = base.ring;
  std::optional<RingElement> p1 = base.p1;
  for (int k = 0; k < r; ++k) {
    m.betti = betti_convolution(m.betti, {1, 0, 1});
    if (!ring) continue;
    GradedRing next = kunneth_product(*ring, cp1);
    if (p1) {
      // p1(CP^1) = 0, so p1 of the product is the pullback from the first factor.
      RingElement lifted = next.zero(4);
      for (std::size_t i = 0; i < p1->coeffs.size(); ++i)
        lifted.coeffs[kunneth_index(*ring, cp1, 4, i, 0, 0)] = p1->coeffs[i];
      p1 = std::move(lifted);
    }
    ring = std::move(next);
  }
  if (ring) m.p1 = std::move(p1);
  m.ring = std::move(ring);
  m.product = ProductTag{std::make_shared<const ManifoldDescriptor>(base), r};
  return m;
}

ManifoldDescriptor builtin(std::string_view name, const std::vector<long long>& params) {
  auto one_param = [&](long long min) {
    if (params.size() != 1) throw std::invalid_argument("builtin '" + std::string(name) + "' takes one parameter");
    if (params[0] < min)
      throw std::invalid_argument("builtin '" + std::string(name) + "' parameter must be >= " + std::to_string(min));
    return params[0];
  };
  auto no_param = [&] {
    if (!params.empty()) throw std::invalid_argument("builtin '" + std::string(name) + "' takes no parameters");
  };
  if (name == "X") return hypersurface_threefold(one_param(1));
  if (name == "CP") return complex_projective_space(static_cast<int>(one_param(1)));
  if (name == "S") return sphere_manifold(static_cast<int>(one_param(1)));
  if (name == "K3^[2]") return no_param(), hilbert_square_k3();
  if (name == "K2T") return no_param(), generalized_kummer_k2t();
  if (name == "S2xS4#S3xS3") return no_param(), s2xs4_sum_s3xs3();
  throw std::invalid_argument("unknown builtin '" + std::string(name) + "'");
}

std::vector<std::string> catalog_references() {
  return {"K2T", "K3^[2]", "X(1)", "X(2)", "X(5)", "X(5)xCP1", "X(5)xCP1^2", "S2xS4#S3xS3", "CP3"};
}

namespace {

constexpr int kMaxParam = 1000;

long long parse_param(const std::string& digits, const std::string& reference) {
  if (digits.size() > 4 || std::stoll(digits) > kMaxParam)
    throw std::invalid_argument("parameter too large in '" + reference + "'");
  return std::stoll(digits);
}

std::optional<ManifoldDescriptor> resolve_builtin(const std::string& ref) {
  static const std::regex product(R"((.+)xCP1(?:\^(\d+))?)");
  static const std::regex hyper(R"(X\((\d+)\))");
  static const std::regex cp(R"(CP(\d+))");
  static const std::regex sphere(R"(S(\d+))");
  std::smatch m;
  if (std::regex_match(ref, m, hyper)) return builtin("X", {parse_param(m[1], ref)});
  if (std::regex_match(ref, m, cp)) return builtin("CP", {parse_param(m[1], ref)});
  if (std::regex_match(ref, m, sphere)) return builtin("S", {parse_param(m[1], ref)});
  if (ref == "K3^[2]" || ref == "K2T" || ref == "S2xS4#S3xS3") return builtin(ref);
  if (std::regex_match(ref, m, product)) {
    auto base = resolve_builtin(m[1]);
    if (!base) return std::nullopt;
    const long long r = m[2].matched ? parse_param(m[2], ref) : 1;
    return product_with_cp1(*base, static_cast<int>(r));
  }
  return std::nullopt;
}

}  // namespace

ManifoldDescriptor resolve_reference(const std::string& reference) {
  if (auto d = resolve_builtin(reference)) return std::move(*d);
  std::ifstream probe(reference);
  if (!probe) throw std::invalid_argument("unknown manifold reference '" + reference + "' (not a builtin or file)");
  return load_descriptor_file(reference).descriptor;
}

// ---------------------------------------------------------------- validation

std::vector<std::string> descriptor_problems(const ManifoldDescriptor& d) {
  std::vector<std::string> out;
  if (d.dim < 0) out.push_back("dim: negative");
  if (static_cast<long long>(d.betti.size()) != d.dim + 1)
    out.push_back("betti: length " + std::to_string(d.betti.size()) + ", expected dim + 1 = " +
                  std::to_string(d.dim + 1));
  for (std::size_t k = 0; k < d.betti.size(); ++k)
    if (d.betti[k] < 0) out.push_back("betti[" + std::to_string(k) + "]: negative");
  if (!d.betti.empty() && d.betti[0] != 1) out.push_back("betti[0]: must be 1 for a connected manifold");
  if (d.simply_connected && d.b(1) != 0) out.push_back("betti[1]: simply connected but b1 != 0");
  if (d.ring) {
    if (to_betti(d.ring->dims()) != d.betti) out.push_back("ring: dimensions do not match betti");
    for (const auto& f : poincare_validate(*d.ring).failures) out.push_back("ring: Poincare duality: " + f);
  }
  if (d.p1) {
    if (d.p1->degree != 4) out.push_back("p1: degree must be 4");
    if (static_cast<long long>(d.p1->coeffs.size()) != d.b(4))
      out.push_back("p1: length " + std::to_string(d.p1->coeffs.size()) + ", expected b4 = " + std::to_string(d.b(4)));
  }
  return out;
}

// --------------------------------------------------------------------- JSON

namespace {

json rationals(const RationalVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

constexpr std::size_t kMaxTensorEntries = 50'000'000;

json ring_json(const GradedRing& ring) {
  const int n = ring.top_degree();
  std::size_t total = 0;
  for (int p = 1; p <= n; ++p)
    for (int q = p; p + q <= n; ++q) total += ring.dim(p) * ring.dim(q) * ring.dim(p + q);
  if (total > kMaxTensorEntries)
    throw std::length_error("ring product tensor has " + std::to_string(total) + " entries, too large to serialize");
  json mult = json::object();
  for (int p = 1; p <= n; ++p)
    for (int q = p; p + q <= n; ++q) {
      const std::size_t dp = ring.dim(p), dq = ring.dim(q), dr = ring.dim(p + q);
      if (dp == 0 || dq == 0 || dr == 0) continue;
      std::vector<std::vector<RationalVector>> t(dp, std::vector<RationalVector>(dq, RationalVector(dr)));
      for (const auto& [ij, v] : ring.table_entries(p, q))
        for (const auto& [k, x] : v.entries()) t[ij.first][ij.second][k] = x;
      json block = json::array();
      for (const auto& row : t) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(rationals(cell));
        block.push_back(std::move(r));
      }
      mult["(" + std::to_string(p) + "," + std::to_string(q) + ")"] = std::move(block);
    }
  return json{{"mult", std::move(mult)}, {"fundamental", rationals(ring.fundamental())}};
}

}  // namespace

json to_json(const ManifoldDescriptor& d) {
  json j{{"name", d.name},
         {"dim", d.dim},
         {"simply_connected", d.simply_connected},
         {"betti", d.betti},
         {"provenance", d.provenance}};
  if (d.ring) j["ring"] = ring_json(*d.ring);
  if (d.p1) j["p1"] = rationals(d.p1->coeffs);
  if (d.hypersurface) j["hypersurface"] = json{{"n", d.hypersurface->n}, {"d", d.hypersurface->d}};
  if (d.product) j["product"] = json{{"base", to_json(*d.product->base)}, {"cp1_factors", d.product->cp1_factors}};
  return j;
}

std::string serialize(const ManifoldDescriptor& d, int indent) { return to_json(d).dump(indent); }

namespace {

class Reader {
 public:
  static const json& field(const json& obj, const std::string& key, const std::string& path, bool required = true) {
    static const json null;
    if (!obj.contains(key)) {
      if (required) throw DescriptorError(path + "/" + key, "missing");
      return null;
    }
    return obj.at(key);
  }

  static long long integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw DescriptorError(path, "expected an integer");
    return v.get<long long>();
  }

  static Rational rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) throw DescriptorError(path, "expected a rational string \"p/q\"");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      throw DescriptorError(path, e.what());
    }
  }

  static RationalVector rational_array(const json& v, const std::string& path, std::size_t expected) {
    if (!v.is_array()) throw DescriptorError(path, "expected an array");
    if (v.size() != expected)
      throw DescriptorError(path, "length " + std::to_string(v.size()) + ", expected " + std::to_string(expected));
    RationalVector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], path + "/" + std::to_string(i)));
    return out;
  }
};

std::pair<int, int> parse_degree_key(const std::string& key, const std::string& path) {
  static const std::regex re(R"(\((\d+),(\d+)\))");
  std::smatch m;
  if (!std::regex_match(key, m, re) || m[1].length() > 4 || m[2].length() > 4)
    throw DescriptorError(path, "key must look like \"(p,q)\"");
  return {std::stoi(m[1]), std::stoi(m[2])};
}

GradedRing read_ring(const json& r, const std::vector<long long>& betti, const std::string& path) {
  if (!r.is_object()) throw DescriptorError(path, "expected an object");
  const int n = static_cast<int>(betti.size()) - 1;
  std::vector<std::size_t> dims(betti.begin(), betti.end());
  if (r.contains("dims")) {
    const auto& jd = r.at("dims");
    if (!jd.is_array() || jd.size() != betti.size()) throw DescriptorError(path + "/dims", "must match betti");
    for (std::size_t k = 0; k < jd.size(); ++k)
      if (Reader::integer(jd[k], path + "/dims/" + std::to_string(k)) != betti[k])
        throw DescriptorError(path + "/dims/" + std::to_string(k), "ring dimension differs from betti");
  }
  if (dims.empty() || dims[0] != 1) throw DescriptorError(path, "ring needs b0 = 1");
  GradedRing::Builder builder(dims);
  if (r.contains("mult")) {
    const auto& mult = r.at("mult");
    if (!mult.is_object()) throw DescriptorError(path + "/mult", "expected an object");
    for (const auto& [key, block] : mult.items()) {
      const std::string bpath = path + "/mult/" + key;
      const auto [p, q] = parse_degree_key(key, bpath);
      if (p < 1 || p > q || p + q > n) throw DescriptorError(bpath, "need 1 <= p <= q and p + q <= dim");
      const std::size_t dp = dims[p], dq = dims[q], dr = dims[p + q];
      if (!block.is_array() || block.size() != dp)
        throw DescriptorError(bpath, "expected " + std::to_string(dp) + " rows");
      for (std::size_t i = 0; i < dp; ++i) {
        const std::string ipath = bpath + "/" + std::to_string(i);
        if (!block[i].is_array() || block[i].size() != dq)
          throw DescriptorError(ipath, "expected " + std::to_string(dq) + " entries");
        for (std::size_t j = 0; j < dq; ++j) {
          const std::string jpath = ipath + "/" + std::to_string(j);
          RationalVector v = Reader::rational_array(block[i][j], jpath, dr);
          if (is_zero(v)) continue;
          try {
            builder.set_product(p, i, q, j, v);
          } catch (const std::exception& e) {
            throw DescriptorError(jpath, e.what());
          }
        }
      }
    }
  }
  builder.set_fundamental(Reader::rational_array(Reader::field(r, "fundamental", path), path + "/fundamental",
                                                 dims.back()));
  try {
    return builder.build(true);
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(path + "/mult", e.what());
  }
}

}  // namespace

LoadResult load_descriptor_json(const json& doc, const LoadOptions& options) {
  if (!doc.is_object()) throw DescriptorError("", "document must be a JSON object");
  Reader rd;
  LoadResult out;
  ManifoldDescriptor& d = out.descriptor;

  const auto& name = rd.field(doc, "name", "");
  if (!name.is_string()) throw DescriptorError("/name", "expected a string");
  d.name = name.get<std::string>();

  d.dim = static_cast<int>(Reader::integer(rd.field(doc, "dim", ""), "/dim"));
  if (d.dim < 0 || d.dim > 64) throw DescriptorError("/dim", "must lie in [0, 64]");

  const auto& sc = rd.field(doc, "simply_connected", "");
  if (!sc.is_boolean()) throw DescriptorError("/simply_connected", "expected a boolean");
  d.simply_connected = sc.get<bool>();

  const auto& betti = rd.field(doc, "betti", "");
  if (!betti.is_array()) throw DescriptorError("/betti", "expected an array");
  if (static_cast<long long>(betti.size()) != d.dim + 1)
    throw DescriptorError("/betti", "length " + std::to_string(betti.size()) + ", expected dim + 1 = " +
                                        std::to_string(d.dim + 1));
  for (std::size_t k = 0; k < betti.size(); ++k) {
    const long long b = Reader::integer(betti[k], "/betti/" + std::to_string(k));
    if (b < 0) throw DescriptorError("/betti/" + std::to_string(k), "negative Betti number");
    d.betti.push_back(b);
  }
  if (d.betti[0] != 1) throw DescriptorError("/betti/0", "must be 1");
  if (d.simply_connected && d.b(1) != 0) throw DescriptorError("/betti/1", "simply connected but b1 != 0");

  const auto& prov = rd.field(doc, "provenance", "", false);
  if (!prov.is_null()) {
    if (!prov.is_array()) throw DescriptorError("/provenance", "expected an array of strings");
    for (std::size_t i = 0; i < prov.size(); ++i) {
      if (!prov[i].is_string()) throw DescriptorError("/provenance/" + std::to_string(i), "expected a string");
      d.provenance.push_back(prov[i].get<std::string>());
    }
  }

  if (doc.contains("ring")) d.ring = read_ring(doc.at("ring"), d.betti, "/ring");
  if (doc.contains("p1")) {
    if (d.dim < 4) throw DescriptorError("/p1", "p1 needs dim >= 4");
    d.p1 = RingElement{4, Reader::rational_array(doc.at("p1"), "/p1", static_cast<std::size_t>(d.b(4)))};
  }
  if (doc.contains("hypersurface")) {
    const auto& h = doc.at("hypersurface");
    if (!h.is_object()) throw DescriptorError("/hypersurface", "expected an object");
    HypersurfaceTag tag;
    tag.n = static_cast<int>(Reader::integer(rd.field(h, "n", "/hypersurface"), "/hypersurface/n"));
    tag.d = Reader::integer(rd.field(h, "d", "/hypersurface"), "/hypersurface/d");
    if (tag.d < 1 || tag.n < 1 || 2 * tag.n != d.dim)
      throw DescriptorError("/hypersurface", "needs n >= 1, d >= 1 and 2n = dim");
    d.hypersurface = tag;
  }
  if (doc.contains("product")) {
    const auto& p = doc.at("product");
    if (!p.is_object()) throw DescriptorError("/product", "expected an object");
    const int r = static_cast<int>(Reader::integer(rd.field(p, "cp1_factors", "/product"), "/product/cp1_factors"));
    if (r < 1) throw DescriptorError("/product/cp1_factors", "must be >= 1");
    LoadResult base;
    try {
      base = load_descriptor_json(rd.field(p, "base", "/product"), options);
    } catch (const DescriptorError& e) {
      throw DescriptorError("/product/base" + e.field(), e.what());
    }
    if (base.descriptor.dim + 2 * r != d.dim) throw DescriptorError("/product", "dimension mismatch with base");
    if (betti_convolution(base.descriptor.betti, [&] {
          std::vector<long long> v{1};
          for (int i = 0; i < r; ++i) v = betti_convolution(v, {1, 0, 1});
          return v;
        }()) != d.betti)
      throw DescriptorError("/product", "Betti numbers do not match base x (CP^1)^r");
    d.product = ProductTag{std::make_shared<const ManifoldDescriptor>(std::move(base.descriptor)), r};
  }

  if (d.ring)
    for (const auto& f : poincare_validate(*d.ring).failures) {
      if (options.strict) throw DescriptorError("/ring", "Poincare duality: " + f);
      out.warnings.push_back("Poincare duality: " + f);
    }
  return out;
}

LoadResult load_descriptor(std::string_view document, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw DescriptorError("", std::string("JSON parse error: ") + e.what());
  }
  return load_descriptor_json(doc, options);
}

LoadResult load_descriptor_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_descriptor(buffer.str(), options);
}

}  // namespace torelli
