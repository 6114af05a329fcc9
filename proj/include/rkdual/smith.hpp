#pragma once

#include <vector>

#include "rkdual/matrix.hpp"

namespace rkdual {

struct SmithForm {
  /// Nonzero invariant factors d1 | d2 | ... | dr, all positive. Over a field
  /// every factor is 1.
  std::vector<Integer> factors;
  std::size_t rank = 0;
};

/// Invariant factors of m over the ring. Sparse elimination with
/// smallest-pivot selection; desk-scale inputs only.
SmithForm smith_normal_form(const Matrix& m, const Ring& ring);

std::size_t rank(const Matrix& m, const Ring& ring);

}  // namespace rkdual
