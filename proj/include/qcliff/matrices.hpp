#pragma once

#include <array>

#include "qcliff/blades.hpp"
#include "qcliff/engine.hpp"
#include "qcliff/multivector.hpp"
#include "qcliff/scalars.hpp"

namespace qcliff {

// Small dense matrices over the coefficient field. Only the operations the
// representation layer needs; row-major storage.
template <class S, int N>
struct SmallMatrix {
  using traits = scalar_traits<S>;
  std::array<S, N * N> a{};

  S& at(int r, int c) { return a[r * N + c]; }
  const S& at(int r, int c) const { return a[r * N + c]; }

  static SmallMatrix zero() { return {}; }
  static SmallMatrix identity() {
    SmallMatrix m;
    for (int i = 0; i < N; ++i) m.at(i, i) = traits::one();
    return m;
  }
  static SmallMatrix unit(int r, int c) {
    SmallMatrix m;
    m.at(r, c) = traits::one();
    return m;
  }

  friend SmallMatrix operator+(SmallMatrix x, const SmallMatrix& y) {
    for (int i = 0; i < N * N; ++i) x.a[i] += y.a[i];
    return x;
  }
  friend SmallMatrix operator-(SmallMatrix x, const SmallMatrix& y) {
    for (int i = 0; i < N * N; ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend SmallMatrix operator*(SmallMatrix x, const S& v) {
    for (auto& e : x.a) e *= v;
    return x;
  }
  friend SmallMatrix operator*(const S& v, SmallMatrix x) { return x * v; }
  friend SmallMatrix operator*(const SmallMatrix& x, const SmallMatrix& y) {
    SmallMatrix r;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const S& xik = x.at(i, k);
        if (traits::is_zero(xik)) continue;
        for (int j = 0; j < N; ++j) r.at(i, j) += xik * y.at(k, j);
      }
    return r;
  }
  friend bool operator==(const SmallMatrix& x, const SmallMatrix& y) { return x.a == y.a; }
  friend bool operator!=(const SmallMatrix& x, const SmallMatrix& y) { return !(x == y); }
  friend SmallMatrix operator-(const SmallMatrix& x) {
    SmallMatrix r;
    for (int i = 0; i < N * N; ++i) r.a[i] = -x.a[i];
    return r;
  }

  SmallMatrix dagger() const {
    SmallMatrix r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r.at(i, j) = traits::conj(at(j, i));
    return r;
  }

  S trace() const {
    S t = traits::zero();
    for (int i = 0; i < N; ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : a)
      if (!traits::is_zero(v)) return false;
    return true;
  }

  double norm_inf_approx() const {
    double mx = 0.0;
    for (const auto& v : a) mx = std::max(mx, traits::abs_approx(v));
    return mx;
  }
};

template <class S>
using Mat2 = SmallMatrix<S, 2>;
template <class S>
using Mat4 = SmallMatrix<S, 4>;

// Quaternion over the coefficient field (components may be complex; the
// quaternion units stay central to the complex unit).
template <class S>
struct Quaternion {
  using traits = scalar_traits<S>;
  S w{traits::zero()}, x{traits::zero()}, y{traits::zero()}, z{traits::zero()};

  static Quaternion zero() { return {}; }
  static Quaternion one() { return {traits::one(), traits::zero(), traits::zero(), traits::zero()}; }

  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
  }
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
  }
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  friend Quaternion operator*(const Quaternion& p, const S& v) {
    return {p.w * v, p.x * v, p.y * v, p.z * v};
  }
  friend bool operator==(const Quaternion& p, const Quaternion& q) {
    return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
  }

  bool is_zero() const {
    return traits::is_zero(w) && traits::is_zero(x) && traits::is_zero(y) && traits::is_zero(z);
  }
  double norm_inf_approx() const {
    return std::max(std::max(traits::abs_approx(w), traits::abs_approx(x)),
                    std::max(traits::abs_approx(y), traits::abs_approx(z)));
  }
};

// 2x2 matrix with quaternion entries, row-major: [[a, b], [c, d]].
template <class S>
struct QuatMat2 {
  Quaternion<S> a, b, c, d;

  friend QuatMat2 operator*(const QuatMat2& x, const QuatMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend QuatMat2 operator+(const QuatMat2& x, const QuatMat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend QuatMat2 operator-(const QuatMat2& x, const QuatMat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend bool operator==(const QuatMat2& x, const QuatMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  double norm_inf_approx() const {
    return std::max(std::max(a.norm_inf_approx(), b.norm_inf_approx()),
                    std::max(c.norm_inf_approx(), d.norm_inf_approx()));
  }
};

// Quaternionic 2x2 representation of the metric Clifford algebra, extended
// coefficient-linearly to the complexified algebra. The generator images are
//   e0 -> [[1, 0], [0, -1]],  ek -> [[0, qk], [qk, 0]]
// with the quaternion units realized inside the even subalgebra.
template <class S>
QuatMat2<S> quaternion_rep(const Multivector<S>& v) {
  const S& h = v[0];
  const S& h0 = v[0b0001];
  const S& h1 = v[0b0010];
  const S& h2 = v[0b0100];
  const S& h3 = v[0b1000];
  const S& h01 = v[0b0011];
  const S& h02 = v[0b0101];
  const S& h03 = v[0b1001];
  const S& h12 = v[0b0110];
  const S& h13 = v[0b1010];
  const S& h23 = v[0b1100];
  const S& h012 = v[0b0111];
  const S& h013 = v[0b1011];
  const S& h023 = v[0b1101];
  const S& h123 = v[0b1110];
  const S& p = v[0b1111];
  QuatMat2<S> m;
  m.a = {h + h0, h23 + h023, -(h13 + h013), h12 + h012};
  m.b = {-(h123 + p), h1 + h01, h2 + h02, h3 + h03};
  m.c = {p - h123, h1 - h01, h2 - h02, h3 - h03};
  m.d = {h - h0, h23 - h023, -(h13 - h013), h12 - h012};
  return m;
}

// The multivector realizing a quaternion inside the even subalgebra:
// units i = e2 e3, j = e3 e1, k = e1 e2.
template <class S>
Multivector<S> embed_quaternion(const Quaternion<S>& q) {
  Multivector<S> r = Multivector<S>::scalar(q.w);
  r[0b1100] = q.x;
  r[0b1010] = -q.y;
  r[0b0110] = q.z;
  return r;
}

// Complex 2x2 image of a quaternion: i -> [[i,0],[0,-i]], j -> [[0,1],[-1,0]],
// k -> [[0,i],[i,0]].
template <class S>
Mat2<S> quaternion_to_mat2(const Quaternion<S>& q) {
  using traits = scalar_traits<S>;
  S iu = traits::i();
  Mat2<S> m;
  m.at(0, 0) = q.w + iu * q.x;
  m.at(0, 1) = q.y + iu * q.z;
  m.at(1, 0) = -q.y + iu * q.z;
  m.at(1, 1) = q.w - iu * q.x;
  return m;
}

// 4x4 complex matrix obtained by expanding every quaternion entry of the
// quaternionic representation into its 2x2 complex image.
template <class S>
Mat4<S> quaternion_rep_matrix(const Multivector<S>& v) {
  QuatMat2<S> q = quaternion_rep(v);
  Mat4<S> m;
  auto put = [&m](int br, int bc, const Mat2<S>& blk) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m.at(2 * br + r, 2 * bc + c) = blk.at(r, c);
  };
  put(0, 0, quaternion_to_mat2(q.a));
  put(0, 1, quaternion_to_mat2(q.b));
  put(1, 0, quaternion_to_mat2(q.c));
  put(1, 1, quaternion_to_mat2(q.d));
  return m;
}

// Standard 4x4 generator matrices: time generator diagonal (1, 1, -1, -1),
// space generators off-diagonal Pauli blocks.
template <class S>
const std::array<Mat4<S>, 4>& gamma_matrices() {
  using traits = scalar_traits<S>;
  static const std::array<Mat4<S>, 4> g = [] {
    std::array<Mat4<S>, 4> m{};
    S one = traits::one();
    S iu = traits::i();
    m[0].at(0, 0) = one;
    m[0].at(1, 1) = one;
    m[0].at(2, 2) = -one;
    m[0].at(3, 3) = -one;
    // sigma1 block
    m[1].at(0, 3) = one;
    m[1].at(1, 2) = one;
    m[1].at(2, 1) = -one;
    m[1].at(3, 0) = -one;
    // sigma2 block
    m[2].at(0, 3) = -iu;
    m[2].at(1, 2) = iu;
    m[2].at(2, 1) = iu;
    m[2].at(3, 0) = -iu;
    // sigma3 block
    m[3].at(0, 2) = one;
    m[3].at(1, 3) = -one;
    m[3].at(2, 0) = -one;
    m[3].at(3, 1) = one;
    return m;
  }();
  return g;
}

// Matrix image of every basis blade: the ascending product of the generator
// matrices selected by the mask.
template <class S>
const std::array<Mat4<S>, kBladeCount>& blade_matrices() {
  static const std::array<Mat4<S>, kBladeCount> b = [] {
    std::array<Mat4<S>, kBladeCount> m{};
    const auto& g = gamma_matrices<S>();
    for (unsigned mask = 0; mask < kBladeCount; ++mask) {
      Mat4<S> acc = Mat4<S>::identity();
      for (int mu = 0; mu < 4; ++mu)
        if ((mask >> mu) & 1u) acc = acc * g[mu];
      m[mask] = acc;
    }
    return m;
  }();
  return b;
}

// Coefficient-linear extension of the blade images.
template <class S>
Mat4<S> dirac_rep(const Multivector<S>& v) {
  using traits = scalar_traits<S>;
  Mat4<S> m;
  const auto& b = blade_matrices<S>();
  for (unsigned mask = 0; mask < kBladeCount; ++mask) {
    if (traits::is_zero(v[mask])) continue;
    m = m + b[mask] * v[mask];
  }
  return m;
}

// Inverse of dirac_rep: blade images are trace-orthogonal with norm 4, so
// each coefficient is recovered as Tr(B_m^dagger M) / 4.
template <class S>
Multivector<S> dirac_rep_inverse(const Mat4<S>& m) {
  using traits = scalar_traits<S>;
  Multivector<S> v;
  const auto& b = blade_matrices<S>();
  S quarter = traits::from_ratio(1, 4);
  for (unsigned mask = 0; mask < kBladeCount; ++mask)
    v[mask] = (b[mask].dagger() * m).trace() * quarter;
  return v;
}

}  // namespace qcliff
