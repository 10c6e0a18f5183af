#include "torelli/hypersurface.hpp"

#include <stdexcept>
#include <string>

namespace torelli {

HyperplaneSeries::HyperplaneSeries(int truncation) {
  if (truncation < 0) throw std::invalid_argument("negative truncation");
  coeffs_.assign(static_cast<std::size_t>(truncation) + 1, Rational(0));
}

HyperplaneSeries::HyperplaneSeries(int truncation, RationalVector coeffs) : HyperplaneSeries(truncation) {
  for (std::size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k) coeffs_[k] = coeffs[k];
}

HyperplaneSeries HyperplaneSeries::one(int truncation) {
  HyperplaneSeries s(truncation);
  s.coeffs_[0] = 1;
  return s;
}

HyperplaneSeries HyperplaneSeries::binomial_power(int truncation, const Rational& a, int power) {
  if (power < 0) throw std::invalid_argument("negative power");
  HyperplaneSeries base(truncation, {Rational(1), a});
  HyperplaneSeries out = one(truncation);
  for (int i = 0; i < power; ++i) out = out * base;
  return out;
}

HyperplaneSeries HyperplaneSeries::inverse_linear(int truncation, const Rational& a) {
  HyperplaneSeries s(truncation);
  Rational term = 1;
  for (auto& c : s.coeffs_) {
    c = term;
    term *= -a;
  }
  return s;
}

HyperplaneSeries operator*(const HyperplaneSeries& a, const HyperplaneSeries& b) {
  if (a.truncation() != b.truncation()) throw std::invalid_argument("series truncations differ");
  HyperplaneSeries out(a.truncation());
  const std::size_t len = a.coeffs_.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

HyperplaneSeries operator+(const HyperplaneSeries& a, const HyperplaneSeries& b) {
  if (a.truncation() != b.truncation()) throw std::invalid_argument("series truncations differ");
  HyperplaneSeries out = a;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
  return out;
}

HypersurfaceData chern_data(int n, long long d) {
  if (n < 1) throw std::invalid_argument("hypersurface dimension must be at least 1, got " + std::to_string(n));
  if (d < 1) throw std::invalid_argument("hypersurface degree must be at least 1, got " + std::to_string(d));
  HypersurfaceData out;
  out.n = n;
  out.d = d;
  const Rational dd(static_cast<long>(d));
  out.chern = HyperplaneSeries::binomial_power(n, 1, n + 2) * HyperplaneSeries::inverse_linear(n, dd);

  const Rational c1 = n >= 1 ? out.chern[1] : Rational(0);
  const Rational c2 = n >= 2 ? out.chern[2] : Rational(0);
  out.p1_coeff = n >= 2 ? Rational(c1 * c1 - 2 * c2) : Rational(0);

  // integral of h^n over X is d
  const Rational chi = dd * out.chern[n];
  if (!is_integer(chi)) throw std::logic_error("non-integral Euler characteristic");
  out.euler = chi.get_num();

  if (n == 3) {
    // Lefschetz: b_0 = b_2 = b_4 = b_6 = 1, b_1 = b_5 = 0
    Integer b3 = 4 - out.euler;
    if (!b3.fits_slong_p()) throw std::overflow_error("b_3 does not fit a machine integer");
    out.betti = std::vector<long long>{1, 0, 1, b3.get_si(), 1, 0, 1};
  }
  return out;
}

StarData p1_in_span_data(const HypersurfaceData& data) {
  if (data.n != 3) throw std::invalid_argument("p1_in_span_data needs a threefold");
  StarData star;
  star.classes.push_back(RingElement{2, {Rational(1)}});
  star.coefficients = RationalMatrix{{data.p1_coeff}};
  return star;
}

RingElement star_combination(const GradedRing& ring, const StarData& data) {
  RingElement sum = ring.zero(4);
  const std::size_t m = data.classes.size();
  if (data.coefficients.rows() != m || data.coefficients.cols() != m)
    throw std::invalid_argument("coefficient matrix does not match the number of classes");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (data.coefficients(i, j) == 0) continue;
      sum = sum + data.coefficients(i, j) * ring.multiply(data.classes[i], data.classes[j]);
    }
  return sum;
}

}  // namespace torelli
