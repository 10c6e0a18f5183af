#ifndef TORELLI_STAR_DATA_HPP
#define TORELLI_STAR_DATA_HPP

#include <vector>

#include "torelli/graded_ring.hpp"
#include "torelli/matrix.hpp"

namespace torelli {

/// Degree-2 classes z_i with a symmetric coefficient matrix a_ij such that
/// sum_ij a_ij z_i z_j = p_1.
struct StarData {
  std::vector<RingElement> classes;
  RationalMatrix coefficients;
};

/// sum_ij a_ij z_i z_j evaluated in the ring.
RingElement star_combination(const GradedRing& ring, const StarData& data);

}  // namespace torelli

#endif
