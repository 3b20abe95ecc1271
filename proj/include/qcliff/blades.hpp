#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>

namespace qcliff {

// Basis blades of a four-dimensional space are encoded as 4-bit masks:
// bit j set means the generator e_j is a factor, factors kept in ascending
// index order. Mask 0 is the scalar unit, mask 15 the volume element.
inline constexpr int kBladeCount = 16;
inline constexpr unsigned kVolumeMask = 0xF;

constexpr int grade(unsigned mask) { return std::popcount(mask & kVolumeMask); }

// Metric signs of the diagonal spacetime metric diag(+1, -1, -1, -1).
constexpr int metric_sign(int mu) { return mu == 0 ? 1 : -1; }

// Sign produced by sorting the concatenation of two ascending factor lists
// into one ascending list: counts the transpositions needed.
constexpr int reorder_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (int k = 1; k < 4; ++k) swaps += std::popcount((a >> k) & b & kVolumeMask);
  return (swaps % 2 == 0) ? 1 : -1;
}

// Reversion multiplies a grade-g blade by (-1)^(g(g-1)/2).
constexpr int reversion_sign(unsigned mask) {
  int g = grade(mask);
  return (g % 4 <= 1) ? 1 : -1;
}

// Product of metric signs over the factors of a blade.
constexpr int blade_metric_sign(unsigned mask) {
  int s = 1;
  for (int mu = 0; mu < 4; ++mu)
    if ((mask >> mu) & 1u) s *= metric_sign(mu);
  return s;
}

// Masks listed grade by grade; handy for filtration and grading checks.
inline constexpr std::array<unsigned, kBladeCount> kMasksByGrade = {
    0, 1, 2, 4, 8, 3, 5, 9, 6, 10, 12, 7, 11, 13, 14, 15};

inline std::string blade_name(unsigned mask) {
  if ((mask & kVolumeMask) == 0) return "1";
  std::string s = "e";
  for (int mu = 0; mu < 4; ++mu)
    if ((mask >> mu) & 1u) s += static_cast<char>('0' + mu);
  return s;
}

}  // namespace qcliff
