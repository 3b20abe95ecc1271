#pragma once

#include <vector>

#include "qcliff/multivector.hpp"

namespace qcliff::testing {

// Rank of a list of multivectors over the exact complex field, by Gaussian
// elimination on their coefficient rows.
inline int exact_rank(std::vector<MultivectorX> rows) {
  int rank = 0;
  for (unsigned col = 0; col < kBladeCount && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col].is_zero()) continue;
      ExactComplex factor = rows[r][col] / rows[rank][col];
      rows[r] -= rows[rank] * factor;
    }
    ++rank;
  }
  return rank;
}

}  // namespace qcliff::testing
