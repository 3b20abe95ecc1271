#pragma once

#include <array>
#include <string>
#include <utility>

#include "qcliff/errors.hpp"
#include "qcliff/ideals.hpp"
#include "qcliff/matrices.hpp"
#include "qcliff/multivector.hpp"

namespace qcliff {

template <class S>
using Column = std::array<S, 4>;

// The sixteen real observables of a spinor: scalar, current, spin tensor
// (independent components with mu < nu), axial current, pseudoscalar.
template <class R>
struct RealCovariants {
  static constexpr std::array<std::pair<int, int>, 6> kPairs = {
      std::pair<int, int>{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

  R sigma{};
  std::array<R, 4> j{};
  std::array<R, 6> s{};
  std::array<R, 4> k{};
  R omega{};

  static int pair_index(int mu, int nu) {
    for (int idx = 0; idx < 6; ++idx)
      if (kPairs[idx].first == mu && kPairs[idx].second == nu) return idx;
    return -1;
  }

  // Antisymmetric accessor.
  R s_at(int mu, int nu) const {
    if (mu == nu) return R(0);
    if (mu < nu) return s[pair_index(mu, nu)];
    return -s[pair_index(nu, mu)];
  }

  friend RealCovariants operator-(const RealCovariants& a, const RealCovariants& b) {
    RealCovariants d;
    d.sigma = a.sigma - b.sigma;
    d.omega = a.omega - b.omega;
    for (int i = 0; i < 4; ++i) {
      d.j[i] = a.j[i] - b.j[i];
      d.k[i] = a.k[i] - b.k[i];
    }
    for (int i = 0; i < 6; ++i) d.s[i] = a.s[i] - b.s[i];
    return d;
  }
};

template <class S>
using CovariantsOf = RealCovariants<typename scalar_traits<S>::real_type>;

namespace detail {

template <class S>
S sesquilinear(const Column<S>& c, const Mat4<S>& m) {
  using traits = scalar_traits<S>;
  S acc = traits::zero();
  for (int r = 0; r < 4; ++r) {
    if (traits::is_zero(c[r])) continue;
    S row = traits::zero();
    for (int s = 0; s < 4; ++s) row += m.at(r, s) * c[s];
    acc += traits::conj(c[r]) * row;
  }
  return acc;
}

template <class R>
double approx_real(const R& v) {
  if constexpr (std::is_same_v<R, double>)
    return v;
  else
    return v.get_d();
}

}  // namespace detail

// Bilinear observables of a column spinor, via the matrix representation:
//   sigma = psi^+ G0 psi,                J_mu = psi^+ G0 G_mu psi,
//   S_munu = psi^+ G0 i G_mu G_nu psi,   K_mu = psi^+ G0 i G0123 G_mu psi,
//   omega = -psi^+ G0 G0123 psi.
// Hermiticity makes every value exactly real; the real part is returned.
template <class S>
CovariantsOf<S> compute_covariants(const Column<S>& c) {
  using traits = scalar_traits<S>;
  const auto& b = blade_matrices<S>();
  const Mat4<S>& g0 = b[0b0001];
  const Mat4<S>& vol = b[0b1111];
  S iu = traits::i();

  CovariantsOf<S> cov;
  cov.sigma = traits::real(detail::sesquilinear(c, g0));
  for (int mu = 0; mu < 4; ++mu)
    cov.j[mu] = traits::real(detail::sesquilinear(c, g0 * b[1u << mu]));
  for (int idx = 0; idx < 6; ++idx) {
    auto [mu, nu] = CovariantsOf<S>::kPairs[idx];
    Mat4<S> m = (g0 * (b[1u << mu] * b[1u << nu])) * iu;
    cov.s[idx] = traits::real(detail::sesquilinear(c, m));
  }
  for (int mu = 0; mu < 4; ++mu) {
    Mat4<S> m = (g0 * (vol * b[1u << mu])) * iu;
    cov.k[mu] = traits::real(detail::sesquilinear(c, m));
  }
  cov.omega = -traits::real(detail::sesquilinear(c, g0 * vol));
  return cov;
}

// Largest covariant magnitude, used for scale-aware zero tests.
template <class R>
double covariant_scale(const RealCovariants<R>& cov) {
  double mx = std::abs(detail::approx_real(cov.sigma));
  mx = std::max(mx, std::abs(detail::approx_real(cov.omega)));
  for (int i = 0; i < 4; ++i) {
    mx = std::max(mx, std::abs(detail::approx_real(cov.j[i])));
    mx = std::max(mx, std::abs(detail::approx_real(cov.k[i])));
  }
  for (int i = 0; i < 6; ++i) mx = std::max(mx, std::abs(detail::approx_real(cov.s[i])));
  return mx;
}

// Residuals of the quadratic identities tying the observables together:
//   r1 = J.J - sigma^2 - omega^2,  r2 = J.J + K.K,  r3 = K.J,
//   r4 = (omega + sigma e0123) S - K ^ J   (as a multivector, indices raised).
template <class R>
struct FierzResiduals {
  using S = ComplexOver<R>;
  R r1{}, r2{}, r3{};
  Multivector<S> r4;

  bool is_exactly_zero() const {
    using traits = scalar_traits<S>;
    return traits::real_is_zero(r1) && traits::real_is_zero(r2) && traits::real_is_zero(r3) &&
           r4.is_zero();
  }
  double max_abs_approx() const {
    double mx = std::abs(detail::approx_real(r1));
    mx = std::max(mx, std::abs(detail::approx_real(r2)));
    mx = std::max(mx, std::abs(detail::approx_real(r3)));
    return std::max(mx, r4.norm_inf_approx());
  }
};

namespace detail {

// Raised-index multivectors of the vector and tensor observables.
template <class S>
Multivector<S> current_mv(const std::array<typename scalar_traits<S>::real_type, 4>& v) {
  using traits = scalar_traits<S>;
  Multivector<S> r;
  for (int mu = 0; mu < 4; ++mu)
    r[1u << mu] = traits::from_real(v[mu]) * traits::from_int(metric_sign(mu));
  return r;
}

template <class S>
Multivector<S> tensor_mv(const std::array<typename scalar_traits<S>::real_type, 6>& s) {
  using traits = scalar_traits<S>;
  Multivector<S> r;
  for (int idx = 0; idx < 6; ++idx) {
    auto [mu, nu] = RealCovariants<typename scalar_traits<S>::real_type>::kPairs[idx];
    r[(1u << mu) | (1u << nu)] =
        traits::from_real(s[idx]) * traits::from_int(metric_sign(mu) * metric_sign(nu));
  }
  return r;
}

}  // namespace detail

template <class R>
FierzResiduals<R> fierz_residuals(const RealCovariants<R>& cov) {
  using S = ComplexOver<R>;
  using traits = scalar_traits<S>;
  FierzResiduals<R> res;
  R j2 = R(0), k2 = R(0), kj = R(0);
  for (int mu = 0; mu < 4; ++mu) {
    R eta = R(metric_sign(mu));
    j2 = j2 + eta * cov.j[mu] * cov.j[mu];
    k2 = k2 + eta * cov.k[mu] * cov.k[mu];
    kj = kj + eta * cov.k[mu] * cov.j[mu];
  }
  res.r1 = j2 - cov.sigma * cov.sigma - cov.omega * cov.omega;
  res.r2 = j2 + k2;
  res.r3 = kj;

  Multivector<S> smv = detail::tensor_mv<S>(cov.s);
  Multivector<S> head;
  head[0] = traits::from_real(cov.omega);
  head[0b1111] = traits::from_real(cov.sigma);
  Multivector<S> lhs = g_product(head, smv);
  Multivector<S> rhs =
      wedge(detail::current_mv<S>(cov.k), detail::current_mv<S>(cov.j));
  res.r4 = lhs - rhs;
  return res;
}

// Multivector aggregating all observables:
//   z = sigma + J + i S + i K e0123 + omega e0123, indices raised.
template <class R>
Multivector<ComplexOver<R>> aggregate(const RealCovariants<R>& cov) {
  using S = ComplexOver<R>;
  using traits = scalar_traits<S>;
  Multivector<S> z;
  z[0] = traits::from_real(cov.sigma);
  z += detail::current_mv<S>(cov.j);
  z += detail::tensor_mv<S>(cov.s) * traits::i();
  Multivector<S> kterm = g_product(detail::current_mv<S>(cov.k),
                                   Multivector<S>::basis(0b1111, traits::i()));
  z += kterm;
  z[0b1111] += traits::from_real(cov.omega);
  return z;
}

// Rank-one density matrix Z = 4 psi (psi^+ G0).
template <class S>
Mat4<S> spin_density(const Column<S>& c) {
  using traits = scalar_traits<S>;
  const Mat4<S>& g0 = blade_matrices<S>()[0b0001];
  std::array<S, 4> bar{};
  for (int s = 0; s < 4; ++s) {
    bar[s] = traits::zero();
    for (int r = 0; r < 4; ++r) bar[s] += traits::conj(c[r]) * g0.at(r, s);
  }
  Mat4<S> z;
  S four = traits::from_int(4);
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) z.at(r, s) = four * c[r] * bar[s];
  return z;
}

// A matrix is a boomerang when conjugation by G0 reproduces its adjoint
// inverse pattern: G0 M^+ G0 = M.
template <class S>
bool is_boomerang(const Mat4<S>& m, double tol = 1e-9) {
  const Mat4<S>& g0 = blade_matrices<S>()[0b0001];
  Mat4<S> diff = g0 * m.dagger() * g0 - m;
  if constexpr (scalar_traits<S>::exact)
    return diff.is_zero();
  else
    return diff.norm_inf_approx() <= tol * std::max(1.0, m.norm_inf_approx());
}

// Residual norms of the rank-one identities of the density matrix:
//   Z Z        = 4 sigma Z
//   Z Gmu Z    = 4 J_mu Z
//   Z Gmu Gnu Z = -4 i S_munu Z
//   Z G0123 Gmu Z = -4 i K_mu Z
//   Z G0123 Z  = -4 omega Z
// plus the boomerang residual and the distance between Z and the matrix
// image of the aggregated observables.
struct SingularResiduals {
  double square{};
  double vector_channel{};
  double tensor_channel{};
  double axial_channel{};
  double volume_channel{};
  double boomerang{};
  double aggregate_distance{};

  double max() const {
    double m = square;
    m = std::max(m, vector_channel);
    m = std::max(m, tensor_channel);
    m = std::max(m, axial_channel);
    m = std::max(m, volume_channel);
    m = std::max(m, boomerang);
    return m;
  }
};

template <class S>
SingularResiduals singular_identity_residuals(const Mat4<S>& z, const Column<S>& c) {
  using traits = scalar_traits<S>;
  const auto& b = blade_matrices<S>();
  const Mat4<S>& vol = b[0b1111];
  CovariantsOf<S> cov = compute_covariants(c);
  S iu = traits::i();
  S four = traits::from_int(4);

  SingularResiduals res;
  res.square = (z * z - z * (four * traits::from_real(cov.sigma))).norm_inf_approx();
  for (int mu = 0; mu < 4; ++mu) {
    auto r = z * b[1u << mu] * z - z * (four * traits::from_real(cov.j[mu]));
    res.vector_channel = std::max(res.vector_channel, r.norm_inf_approx());
    auto ra = z * (vol * b[1u << mu]) * z + z * (four * iu * traits::from_real(cov.k[mu]));
    res.axial_channel = std::max(res.axial_channel, ra.norm_inf_approx());
  }
  for (int idx = 0; idx < 6; ++idx) {
    auto [mu, nu] = CovariantsOf<S>::kPairs[idx];
    auto r = z * (b[1u << mu] * b[1u << nu]) * z + z * (four * iu * traits::from_real(cov.s[idx]));
    res.tensor_channel = std::max(res.tensor_channel, r.norm_inf_approx());
  }
  res.volume_channel =
      (z * vol * z + z * (four * traits::from_real(cov.omega))).norm_inf_approx();

  const Mat4<S>& g0 = b[0b0001];
  res.boomerang = (g0 * z.dagger() * g0 - z).norm_inf_approx();
  res.aggregate_distance = (dirac_rep(aggregate(cov)) - z).norm_inf_approx();
  return res;
}

// Class labels 1..6 assigned from the zero pattern of (sigma, omega, S, K).
// The zero test is exact for the exact backend and scale-aware otherwise:
// a value counts as zero below tol * max(1, largest covariant magnitude).
template <class R>
int classify(const RealCovariants<R>& cov, double tol = 1e-9) {
  double thr = tol * std::max(1.0, covariant_scale(cov));
  auto null_scalar = [&](const R& v) {
    if constexpr (std::is_same_v<R, double>)
      return std::abs(v) <= thr;
    else
      return sgn(v) == 0;
  };
  bool s0 = null_scalar(cov.sigma);
  bool w0 = null_scalar(cov.omega);
  bool smallS = true;
  for (int i = 0; i < 6; ++i) smallS = smallS && null_scalar(cov.s[i]);
  bool smallK = true;
  for (int i = 0; i < 4; ++i) smallK = smallK && null_scalar(cov.k[i]);

  if (!s0 && !w0) return 1;
  if (!s0 && w0) return 2;
  if (s0 && !w0) return 3;
  if (!smallS && !smallK) return 4;
  if (!smallS && smallK) return 5;
  if (smallS && !smallK) return 6;
  bool smallJ = true;
  for (int i = 0; i < 4; ++i) smallJ = smallJ && null_scalar(cov.j[i]);
  throw UnclassifiableError(std::string("all classifying covariants vanish") +
                            (smallJ ? " (current vanishes as well)" : " (current is nonzero)"));
}

}  // namespace qcliff
