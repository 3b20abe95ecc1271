#pragma once

#include <array>
#include <utility>

#include "qcliff/engine.hpp"
#include "qcliff/errors.hpp"
#include "qcliff/matrices.hpp"
#include "qcliff/multivector.hpp"

namespace qcliff {

// Primitive idempotent of the complexified algebra,
// f = 1/4 (1 + e0)(1 + i e1 e2) = 1/4 (1 + e0 + i e12 + i e012).
// Its matrix image is the unit E11, so the minimal left ideal it generates
// is the first-column space.
template <class S>
const Multivector<S>& ideal_idempotent() {
  using traits = scalar_traits<S>;
  static const Multivector<S> f = [] {
    Multivector<S> r;
    S q = traits::from_ratio(1, 4);
    S iq = traits::i() * q;
    r[0] = q;
    r[0b0001] = q;
    r[0b0110] = iq;
    r[0b0111] = iq;
    return r;
  }();
  return f;
}

// Real primitive idempotent 1/2 (1 + e0); its left ideal is a right module
// over the quaternionic algebra f Cl f.
template <class S>
const Multivector<S>& real_idempotent() {
  using traits = scalar_traits<S>;
  static const Multivector<S> f = [] {
    Multivector<S> r;
    r[0] = traits::from_ratio(1, 2);
    r[0b0001] = traits::from_ratio(1, 2);
    return r;
  }();
  return f;
}

namespace detail {
template <class S>
bool negligible(double value, double scale, double tol) {
  if constexpr (scalar_traits<S>::exact)
    return value == 0.0;
  else
    return value <= tol * std::max(1.0, scale);
}
}  // namespace detail

// Quaternionic coordinates of an element of the real-idempotent left ideal:
// Omega = q1 f + q2 e0123 f, recovered as the first column of the
// quaternionic representation. Elements outside the ideal are rejected.
template <class S>
std::pair<Quaternion<S>, Quaternion<S>> quaternion_pair(const Multivector<S>& omega,
                                                        double tol = 1e-12) {
  QuatMat2<S> m = quaternion_rep(omega);
  double scale = m.norm_inf_approx();
  double leak = std::max(m.b.norm_inf_approx(), m.d.norm_inf_approx());
  if (!detail::negligible<S>(leak, scale, tol))
    throw NotInIdealError("element is not in the real-idempotent left ideal");
  return {m.a, m.c};
}

// Reassemble an ideal element from its quaternionic coordinates.
template <class S>
Multivector<S> from_quaternion_pair(const Quaternion<S>& q1, const Quaternion<S>& q2) {
  const auto& f = real_idempotent<S>();
  Multivector<S> volume = Multivector<S>::basis(0b1111);
  return g_product(embed_quaternion(q1), f) +
         g_product(embed_quaternion(q2), g_product(volume, f));
}

// Column coordinates of an element of the complex-idempotent left ideal:
// the first column of its matrix image. Nonzero residue in the other
// columns means the element is outside the ideal.
template <class S>
std::array<S, 4> to_column(const Multivector<S>& psi, double tol = 1e-12) {
  Mat4<S> m = dirac_rep(psi);
  double scale = m.norm_inf_approx();
  double leak = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 1; c < 4; ++c)
      leak = std::max(leak, scalar_traits<S>::abs_approx(m.at(r, c)));
  if (!detail::negligible<S>(leak, scale, tol))
    throw NotInIdealError("element is not in the complex-idempotent left ideal");
  return {m.at(0, 0), m.at(1, 0), m.at(2, 0), m.at(3, 0)};
}

// The unique ideal element whose matrix image has the given first column
// and zeros elsewhere.
template <class S>
Multivector<S> from_column(const std::array<S, 4>& c) {
  Mat4<S> m;
  for (int r = 0; r < 4; ++r) m.at(r, 0) = c[r];
  return dirac_rep_inverse(m);
}

// Column form of the ideal projection psi f of an arbitrary element.
template <class S>
std::array<S, 4> project_to_column(const Multivector<S>& psi) {
  return to_column(g_product(psi, ideal_idempotent<S>()));
}

}  // namespace qcliff
