#ifndef TORELLI_CATALOG_HPP
#define TORELLI_CATALOG_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "torelli/graded_ring.hpp"

namespace torelli {

struct ManifoldDescriptor;

/// Smooth degree-d hypersurface of complex dimension n.
struct HypersurfaceTag {
  int n = 3;
  long long d = 1;
  friend bool operator==(const HypersurfaceTag&, const HypersurfaceTag&) = default;
};

/// base x (CP^1)^cp1_factors.
struct ProductTag {
  std::shared_ptr<const ManifoldDescriptor> base;
  int cp1_factors = 0;
};

struct ManifoldDescriptor {
  std::string name;
  int dim = 0;  // real dimension
  bool simply_connected = true;
  std::vector<long long> betti;
  std::optional<GradedRing> ring;
  std::optional<RingElement> p1;  // degree 4, coordinates in the ring's basis
  std::vector<std::string> provenance;

  std::optional<HypersurfaceTag> hypersurface;
  std::optional<ProductTag> product;

  long long b(int k) const { return k >= 0 && k < static_cast<int>(betti.size()) ? betti[k] : 0; }
};

bool operator==(const ManifoldDescriptor& a, const ManifoldDescriptor& b);

/// Rejected descriptor; field() is a JSON-pointer-like path to the culprit.
class DescriptorError : public std::runtime_error {
 public:
  DescriptorError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Builtins.
ManifoldDescriptor hypersurface_threefold(long long d);
ManifoldDescriptor complex_projective_space(int n);
ManifoldDescriptor hilbert_square_k3();
ManifoldDescriptor generalized_kummer_k2t();
ManifoldDescriptor s2xs4_sum_s3xs3();
ManifoldDescriptor sphere_manifold(int n);
ManifoldDescriptor product_with_cp1(const ManifoldDescriptor& base, int r);

/// Builtin by family name: "X" (params {d}), "CP" ({n}), "S" ({n}), "K3^[2]",
/// "K2T", "S2xS4#S3xS3". Throws std::invalid_argument on unknown names or
/// bad parameters.
ManifoldDescriptor builtin(std::string_view name, const std::vector<long long>& params = {});

/// Reference strings of the catalog listed by `catalog`.
std::vector<std::string> catalog_references();

/// "X(5)", "CP3", "S2", "K3^[2]", "K2T", "S2xS4#S3xS3", any of these followed
/// by "xCP1" or "xCP1^r"; otherwise a path to a descriptor document.
ManifoldDescriptor resolve_reference(const std::string& reference);

/// Invariant violations of a descriptor (empty when valid): Betti length,
/// ring dims, b_1 for simply connected, p1 shape, Poincare duality.
std::vector<std::string> descriptor_problems(const ManifoldDescriptor& d);

nlohmann::json to_json(const ManifoldDescriptor& d);
/// Canonical document: sorted keys, rationals as "p" or "p/q" strings.
std::string serialize(const ManifoldDescriptor& d, int indent = -1);

struct LoadOptions {
  bool strict = false;  // Poincare duality failures are errors instead of warnings
};

struct LoadResult {
  ManifoldDescriptor descriptor;
  std::vector<std::string> warnings;
};

/// Parses and validates a descriptor document. Throws DescriptorError.
LoadResult load_descriptor(std::string_view document, const LoadOptions& options = {});
LoadResult load_descriptor_json(const nlohmann::json& document, const LoadOptions& options = {});
LoadResult load_descriptor_file(const std::string& path, const LoadOptions& options = {});

}  // namespace torelli

#endif
