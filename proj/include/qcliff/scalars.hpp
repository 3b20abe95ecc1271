#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <string>

#include <gmpxx.h>

namespace qcliff {

// Complex number with exact rational real and imaginary parts. Supports the
// ring operations the algebra needs plus exact division, so every identity
// tested in exact mode is decided without rounding.
struct ExactComplex {
  mpq_class re{0};
  mpq_class im{0};

  ExactComplex() = default;
  ExactComplex(long n) : re(n), im(0) {}               // NOLINT(google-explicit-constructor)
  ExactComplex(mpq_class r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  ExactComplex conjugated() const { return {re, mpq_class(-im)}; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    mpq_class r(re * o.re - im * o.im);
    mpq_class i(re * o.im + im * o.re);
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator-(const ExactComplex& a) {
    return {mpq_class(-a.re), mpq_class(-a.im)};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    mpq_class d(b.re * b.re + b.im * b.im);
    return {mpq_class((a.re * b.re + a.im * b.im) / d),
            mpq_class((a.im * b.re - a.re * b.im) / d)};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

// Uniform access to the two coefficient fields the library is instantiated
// with: ExactComplex (exact backend) and std::complex<double> (float backend).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<ExactComplex> {
  using real_type = mpq_class;
  static constexpr bool exact = true;

  static ExactComplex zero() { return {}; }
  static ExactComplex one() { return {1}; }
  static ExactComplex i() { return {mpq_class(0), mpq_class(1)}; }
  static ExactComplex from_int(long n) { return {n}; }
  static ExactComplex from_ratio(long num, long den) { return {mpq_class(num, den)}; }
  static ExactComplex from_real(const real_type& r) { return {r}; }
  static ExactComplex make(const real_type& r, const real_type& i) { return {r, i}; }
  static ExactComplex conj(const ExactComplex& v) { return v.conjugated(); }
  static real_type real(const ExactComplex& v) { return v.re; }
  static real_type imag(const ExactComplex& v) { return v.im; }
  static bool is_zero(const ExactComplex& v) { return v.is_zero(); }
  static double approx(const real_type& r) { return r.get_d(); }
  static double abs_approx(const ExactComplex& v) {
    return std::hypot(v.re.get_d(), v.im.get_d());
  }

  static real_type real_zero() { return mpq_class(0); }
  static real_type real_one() { return mpq_class(1); }
  static real_type real_from_ratio(long num, long den) { return mpq_class(num, den); }
  static real_type real_from_double(double d) { return mpq_class(d); }
  static bool real_is_zero(const real_type& r) { return sgn(r) == 0; }

  static std::string str(const ExactComplex& v) {
    return v.re.get_str() + (sgn(v.im) >= 0 ? "+" : "") + v.im.get_str() + "i";
  }
  static std::string real_str(const real_type& r) { return r.get_str(); }
};

template <>
struct scalar_traits<std::complex<double>> {
  using real_type = double;
  static constexpr bool exact = false;

  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> i() { return {0.0, 1.0}; }
  static std::complex<double> from_int(long n) { return {static_cast<double>(n), 0.0}; }
  static std::complex<double> from_ratio(long num, long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static std::complex<double> from_real(double r) { return {r, 0.0}; }
  static std::complex<double> make(double r, double i) { return {r, i}; }
  static std::complex<double> conj(const std::complex<double>& v) { return std::conj(v); }
  static double real(const std::complex<double>& v) { return v.real(); }
  static double imag(const std::complex<double>& v) { return v.imag(); }
  static bool is_zero(const std::complex<double>& v) {
    return v.real() == 0.0 && v.imag() == 0.0;
  }
  static double approx(double r) { return r; }
  static double abs_approx(const std::complex<double>& v) { return std::abs(v); }

  static double real_zero() { return 0.0; }
  static double real_one() { return 1.0; }
  static double real_from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double real_from_double(double d) { return d; }
  static bool real_is_zero(double r) { return r == 0.0; }

  static std::string str(const std::complex<double>& v) {
    return std::to_string(v.real()) + (v.imag() >= 0 ? "+" : "") + std::to_string(v.imag()) +
           "i";
  }
  static std::string real_str(double r) { return std::to_string(r); }
};

using Complex64 = std::complex<double>;

// Maps a real scalar type back to the complex type built on it, so functions
// taking real-valued data can still produce complex multivectors.
template <class R>
struct complex_over;

template <>
struct complex_over<mpq_class> {
  using type = ExactComplex;
};

template <>
struct complex_over<double> {
  using type = Complex64;
};

template <class R>
using ComplexOver = typename complex_over<R>::type;

}  // namespace qcliff
