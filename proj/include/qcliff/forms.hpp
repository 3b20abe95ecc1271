#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <string>
#include <utility>

#include "qcliff/blades.hpp"
#include "qcliff/multivector.hpp"
#include "qcliff/scalars.hpp"

namespace qcliff {

// Real bilinear form on the four generators, stored as a full 4x4 matrix
// with entry (i, j) = B(e_i, e_j). R is the real coefficient type of the
// chosen backend (mpq_class or double).
template <class R>
struct BilinearForm {
  std::array<std::array<R, 4>, 4> m{};

  R operator()(int i, int j) const { return m[i][j]; }
  R& at(int i, int j) { return m[i][j]; }

  static BilinearForm zero() { return {}; }

  static BilinearForm minkowski() {
    BilinearForm f;
    for (int mu = 0; mu < 4; ++mu) f.m[mu][mu] = R(metric_sign(mu));
    return f;
  }

  struct UpperEntry {
    int mu;
    int nu;
    R value;
  };

  // Antisymmetric form from its independent upper-triangle entries.
  static BilinearForm antisymmetric(std::initializer_list<UpperEntry> entries) {
    BilinearForm f;
    for (const auto& e : entries) {
      f.m[e.mu][e.nu] = e.value;
      f.m[e.nu][e.mu] = -e.value;
    }
    return f;
  }

  BilinearForm transposed() const {
    BilinearForm f;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.m[i][j] = m[j][i];
    return f;
  }

  friend BilinearForm operator+(const BilinearForm& a, const BilinearForm& b) {
    BilinearForm f;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.m[i][j] = a.m[i][j] + b.m[i][j];
    return f;
  }
  friend BilinearForm operator-(const BilinearForm& a, const BilinearForm& b) {
    BilinearForm f;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.m[i][j] = a.m[i][j] - b.m[i][j];
    return f;
  }
  friend BilinearForm operator*(const BilinearForm& a, const R& s) {
    BilinearForm f;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.m[i][j] = a.m[i][j] * s;
    return f;
  }
  friend bool operator==(const BilinearForm& a, const BilinearForm& b) { return a.m == b.m; }

  // Symmetric part (B + B^T)/2.
  BilinearForm symmetric_part() const {
    BilinearForm f;
    R half = R(1) / R(2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.m[i][j] = (m[i][j] + m[j][i]) * half;
    return f;
  }

  // Antisymmetric part (B - B^T)/2.
  BilinearForm antisymmetric_part() const {
    BilinearForm f;
    R half = R(1) / R(2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.m[i][j] = (m[i][j] - m[j][i]) * half;
    return f;
  }

  double max_abs_approx() const {
    double mx = 0.0;
    for (const auto& row : m)
      for (const auto& v : row) {
        double d = approx_real(v);
        mx = std::max(mx, d < 0 ? -d : d);
      }
    return mx;
  }

  // Scale-aware antisymmetry check: |B(i,j) + B(j,i)| <= tol * (1 + max|B|).
  bool is_antisymmetric(double tol = 1e-12) const {
    double bound = tol * (1.0 + max_abs_approx());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = approx_real(m[i][j] + m[j][i]);
        if ((s < 0 ? -s : s) > bound) return false;
      }
    return true;
  }

  bool is_zero() const {
    for (const auto& row : m)
      for (const auto& v : row)
        if (!(v == R(0))) return false;
    return true;
  }

  // Stable textual key identifying the form exactly; used for product-table
  // caching.
  std::string fingerprint() const {
    std::string s;
    for (const auto& row : m)
      for (const auto& v : row) {
        s += exact_key(v);
        s += '|';
      }
    return s;
  }

 private:
  static double approx_real(const mpq_class& v) { return v.get_d(); }
  static double approx_real(double v) { return v; }
  static std::string exact_key(const mpq_class& v) { return v.get_str(); }
  static std::string exact_key(double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return std::string(buf);
  }
};

// Determinant of a k x k real matrix (k <= 4), by minor expansion.
template <class R>
R small_determinant(const std::array<std::array<R, 4>, 4>& a, int k) {
  if (k == 0) return R(1);
  if (k == 1) return a[0][0];
  if (k == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  R det = R(0);
  for (int c = 0; c < k; ++c) {
    std::array<std::array<R, 4>, 4> minor{};
    for (int r = 1; r < k; ++r) {
      int cc = 0;
      for (int s = 0; s < k; ++s) {
        if (s == c) continue;
        minor[r - 1][cc++] = a[r][s];
      }
    }
    R term = a[0][c] * small_determinant(minor, k - 1);
    if (c % 2 == 0)
      det = det + term;
    else
      det = det - term;
  }
  return det;
}

// Gram extension of a symmetric form to basis blades: zero across different
// grades, otherwise the determinant of the factor-pairing matrix.
template <class R>
R blade_pairing(const BilinearForm<R>& g, unsigned maskI, unsigned maskJ) {
  int k = grade(maskI);
  if (k != grade(maskJ)) return R(0);
  std::array<int, 4> is{}, js{};
  int ni = 0, nj = 0;
  for (int mu = 0; mu < 4; ++mu) {
    if ((maskI >> mu) & 1u) is[ni++] = mu;
    if ((maskJ >> mu) & 1u) js[nj++] = mu;
  }
  std::array<std::array<R, 4>, 4> gram{};
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) gram[r][c] = g(is[r], js[c]);
  return small_determinant(gram, k);
}

// Bilinear pairing of two multivectors under the Gram extension of g.
template <class S>
S metric_pairing(const BilinearForm<typename scalar_traits<S>::real_type>& g,
                 const Multivector<S>& x, const Multivector<S>& y) {
  using traits = scalar_traits<S>;
  S acc = traits::zero();
  for (unsigned a = 0; a < kBladeCount; ++a) {
    if (traits::is_zero(x[a])) continue;
    for (unsigned b = 0; b < kBladeCount; ++b) {
      if (traits::is_zero(y[b])) continue;
      auto p = blade_pairing(g, a, b);
      if (traits::real_is_zero(p)) continue;
      acc += x[a] * y[b] * traits::from_real(p);
    }
  }
  return acc;
}

}  // namespace qcliff
