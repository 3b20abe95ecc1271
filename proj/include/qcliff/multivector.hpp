#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "qcliff/blades.hpp"
#include "qcliff/scalars.hpp"

namespace qcliff {

// Dense element of the 16-dimensional exterior/Clifford module over the
// coefficient field S, indexed by blade mask.
template <class S>
class Multivector {
 public:
  using traits = scalar_traits<S>;

  Multivector() : c_{} {}

  static Multivector scalar(const S& v) {
    Multivector r;
    r.c_[0] = v;
    return r;
  }
  static Multivector basis(unsigned mask) { return basis(mask, traits::one()); }
  static Multivector basis(unsigned mask, const S& coeff) {
    Multivector r;
    r.c_[mask & kVolumeMask] = coeff;
    return r;
  }

  S& operator[](unsigned mask) { return c_[mask & kVolumeMask]; }
  const S& operator[](unsigned mask) const { return c_[mask & kVolumeMask]; }

  Multivector& operator+=(const Multivector& o) {
    for (int m = 0; m < kBladeCount; ++m) c_[m] += o.c_[m];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    for (int m = 0; m < kBladeCount; ++m) c_[m] -= o.c_[m];
    return *this;
  }
  Multivector& operator*=(const S& v) {
    for (auto& c : c_) c *= v;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const S& v) { return a *= v; }
  friend Multivector operator*(const S& v, Multivector a) { return a *= v; }
  friend Multivector operator-(const Multivector& a) {
    Multivector r;
    for (int m = 0; m < kBladeCount; ++m) r.c_[m] = -a.c_[m];
    return r;
  }
  friend bool operator==(const Multivector& a, const Multivector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

  Multivector grade_part(int r) const {
    Multivector out;
    for (int m = 0; m < kBladeCount; ++m)
      if (grade(m) == r) out.c_[m] = c_[m];
    return out;
  }

  // Reversion: flips the factor order of every blade.
  Multivector reversed() const {
    Multivector out;
    for (int m = 0; m < kBladeCount; ++m)
      out.c_[m] = reversion_sign(m) > 0 ? c_[m] : -c_[m];
    return out;
  }

  // Coefficient-wise complex conjugation.
  Multivector conjugated() const {
    Multivector out;
    for (int m = 0; m < kBladeCount; ++m) out.c_[m] = traits::conj(c_[m]);
    return out;
  }

  // Reversion composed with coefficient conjugation, both taken in the
  // plain (undotted) blade basis.
  Multivector reversed_conjugate() const { return reversed().conjugated(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const S& v) { return traits::is_zero(v); });
  }

  // Set of grades with a nonzero coefficient.
  std::array<bool, 5> grade_support() const {
    std::array<bool, 5> has{};
    for (int m = 0; m < kBladeCount; ++m)
      if (!traits::is_zero(c_[m])) has[grade(m)] = true;
    return has;
  }

  double norm_inf_approx() const {
    double mx = 0.0;
    for (const auto& v : c_) mx = std::max(mx, traits::abs_approx(v));
    return mx;
  }

  std::string str() const {
    std::string out;
    for (int m = 0; m < kBladeCount; ++m) {
      if (traits::is_zero(c_[m])) continue;
      if (!out.empty()) out += " + ";
      out += "(" + traits::str(c_[m]) + ")" + blade_name(m);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::array<S, kBladeCount> c_;
};

// Exterior product: nonzero only on disjoint masks, with the sort sign.
template <class S>
Multivector<S> wedge(const Multivector<S>& x, const Multivector<S>& y) {
  using traits = scalar_traits<S>;
  Multivector<S> r;
  for (unsigned a = 0; a < kBladeCount; ++a) {
    if (traits::is_zero(x[a])) continue;
    for (unsigned b = 0; b < kBladeCount; ++b) {
      if ((a & b) != 0 || traits::is_zero(y[b])) continue;
      S term = x[a] * y[b];
      if (reorder_sign(a, b) < 0) term = -term;
      r[a | b] += term;
    }
  }
  return r;
}

using MultivectorX = Multivector<ExactComplex>;
using MultivectorD = Multivector<Complex64>;

}  // namespace qcliff
