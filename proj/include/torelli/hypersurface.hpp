#ifndef TORELLI_HYPERSURFACE_HPP
#define TORELLI_HYPERSURFACE_HPP

#include <optional>
#include <vector>

#include "torelli/rational.hpp"
#include "torelli/star_data.hpp"

namespace torelli {

/// Polynomial in the hyperplane class h truncated above h^n.
class HyperplaneSeries {
 public:
  explicit HyperplaneSeries(int truncation);
  HyperplaneSeries(int truncation, RationalVector coeffs);

  static HyperplaneSeries one(int truncation);
  /// (1 + a h)^power
  static HyperplaneSeries binomial_power(int truncation, const Rational& a, int power);
  /// 1 / (1 + a h) as the truncated geometric series sum (-a h)^k.
  static HyperplaneSeries inverse_linear(int truncation, const Rational& a);

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const RationalVector& coeffs() const { return coeffs_; }

  friend HyperplaneSeries operator*(const HyperplaneSeries& a, const HyperplaneSeries& b);
  friend HyperplaneSeries operator+(const HyperplaneSeries& a, const HyperplaneSeries& b);
  friend bool operator==(const HyperplaneSeries&, const HyperplaneSeries&) = default;

 private:
  RationalVector coeffs_;
};

/// Characteristic data of a smooth degree-d hypersurface X in CP^{n+1}.
struct HypersurfaceData {
  int n = 0;  // complex dimension
  long long d = 0;
  HyperplaneSeries chern{0};  // c(X) = sum c_k h^k
  Rational p1_coeff;          // p_1 = p1_coeff * h^2
  Integer euler;
  std::optional<std::vector<long long>> betti;  // only for n = 3

  const Rational& c(int k) const { return chern[k]; }
};

/// c(X) = (1+h)^{n+2} / (1+dh), p_1 = c_1^2 - 2 c_2, chi = d [h^n] c_n.
HypersurfaceData chern_data(int n, long long d);

/// For a threefold, p_1 = l z^2 with z = h; returns z and l = p1_coeff.
StarData p1_in_span_data(const HypersurfaceData& data);

}  // namespace torelli

#endif
