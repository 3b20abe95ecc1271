#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qcliff/covariants.hpp"
#include "qcliff/engine.hpp"
#include "qcliff/errors.hpp"
#include "qcliff/ideals.hpp"
#include "qcliff/matrices.hpp"
#include "qcliff/random.hpp"

namespace qcliff {

// Primitive idempotent of the deformed product, split into the classical
// idempotent and its deformation correction:
//   f_B = (1/4)(1 + g0) o_B (1 + i g1 o_B g2) = f + f(A).
template <class S>
struct BIdempotent {
  Multivector<S> f_b;
  Multivector<S> f_part;
  Multivector<S> a_part;
};

template <class S>
BIdempotent<S> idempotent_f_b(const FormOf<S>& a_form) {
  using traits = scalar_traits<S>;
  FormOf<S> b_form = minkowski_form<S>() + a_form;

  Multivector<S> left = Multivector<S>::scalar(traits::one()) + Multivector<S>::basis(0b0001);
  Multivector<S> g1g2 =
      b_product(Multivector<S>::basis(0b0010), Multivector<S>::basis(0b0100), b_form);
  Multivector<S> right = Multivector<S>::scalar(traits::one()) + g1g2 * traits::i();

  BIdempotent<S> out;
  out.f_b = b_product(left, right, b_form) * traits::from_ratio(1, 4);
  out.f_part = ideal_idempotent<S>();
  out.a_part = out.f_b - out.f_part;
  return out;
}

// Deformation part of an element: the deformed-basis reading of the same
// coefficients minus the classical element. Lands in grades 0, 1 and 2.
template <class S>
Multivector<S> psi_a_part(const Multivector<S>& psi, const FormOf<S>& a_form) {
  FormOf<S> b_form = minkowski_form<S>() + a_form;
  return tau(psi, b_form) - psi;
}

// An element of the deformed algebra carried as classical part plus
// deformation part, with the deformation's scalar coefficient kept handy.
template <class S>
struct BSpinor {
  Multivector<S> psi;
  Multivector<S> psi_a;
  FormOf<S> a;
  typename scalar_traits<S>::real_type s{};

  Multivector<S> total() const { return psi + psi_a; }
};

template <class S>
BSpinor<S> build_b_element(const Multivector<S>& psi, const FormOf<S>& a_form) {
  BSpinor<S> bs;
  bs.psi = psi;
  bs.psi_a = psi_a_part(psi, a_form);
  bs.a = a_form;
  bs.s = scalar_traits<S>::real(bs.psi_a[0]);
  return bs;
}

// The four cross terms of (psi + psi(A)) o_B (f + f(A)), in that order.
// Distributivity makes their sum equal the full product; both sides are
// still exposed so the identity can be checked term by term.
template <class S>
struct BProductTerms {
  std::array<Multivector<S>, 4> terms;

  Multivector<S> sum() const { return terms[0] + terms[1] + terms[2] + terms[3]; }
};

template <class S>
BProductTerms<S> decompose_b_spinor(const BSpinor<S>& bs) {
  FormOf<S> b_form = minkowski_form<S>() + bs.a;
  BIdempotent<S> f = idempotent_f_b<S>(bs.a);
  BProductTerms<S> out;
  out.terms[0] = b_product(bs.psi, f.f_part, b_form);
  out.terms[1] = b_product(bs.psi_a, f.f_part, b_form);
  out.terms[2] = b_product(bs.psi, f.a_part, b_form);
  out.terms[3] = b_product(bs.psi_a, f.a_part, b_form);
  return out;
}

// Deformed observables plus their classical/deformation split. The deformed
// density multivector is not exactly self-adjoint channel by channel, so the
// off-channel leaks are reported rather than discarded silently:
//   sigma_im / j_im carry imaginary residues of the scalar and vector slots,
//   s_re carries the real residue of the tensor slot, omega_im the imaginary
//   residue of the volume slot, and k_scalar the grade-0 part of the
//   paravector that houses the axial channel.
template <class R>
struct QuantumCovariants {
  RealCovariants<R> b;
  RealCovariants<R> classical;
  RealCovariants<R> a_part;

  R k_scalar{};
  R sigma_im{};
  std::array<R, 4> j_im{};
  std::array<R, 6> s_re{};
  R omega_im{};
};

namespace detail {

template <class S>
struct BSlots {
  CovariantsOf<S> cov;
  typename scalar_traits<S>::real_type k_scalar{};
  typename scalar_traits<S>::real_type sigma_im{};
  std::array<typename scalar_traits<S>::real_type, 4> j_im{};
  std::array<typename scalar_traits<S>::real_type, 6> s_re{};
  typename scalar_traits<S>::real_type omega_im{};
};

// Evaluates the observable slots of a column spinor under the product of
// the given full bilinear form: the spinor is read in the deformed basis,
// multiplied against its reversed conjugate, and the channels are read off
// grade by grade (the axial channel through its paravector).
template <class S>
BSlots<S> b_slots(const Column<S>& c, const FormOf<S>& b_form) {
  using traits = scalar_traits<S>;

  Multivector<S> psi = from_column(c);
  Multivector<S> psi_b = tau(psi, b_form);
  Multivector<S> z =
      b_product(psi_b * traits::from_int(4), psi_b.reversed_conjugate(), b_form);

  BSlots<S> out;
  out.cov.sigma = traits::real(z[0]);
  out.sigma_im = traits::imag(z[0]);
  for (int mu = 0; mu < 4; ++mu) {
    out.cov.j[mu] = traits::real(z[1u << mu]);
    if (metric_sign(mu) < 0) out.cov.j[mu] = -out.cov.j[mu];
    out.j_im[mu] = traits::imag(z[1u << mu]);
  }
  for (int idx = 0; idx < 6; ++idx) {
    auto [mu, nu] = CovariantsOf<S>::kPairs[idx];
    unsigned mask = (1u << mu) | (1u << nu);
    out.cov.s[idx] = traits::imag(z[mask]);
    if (metric_sign(mu) * metric_sign(nu) < 0) out.cov.s[idx] = -out.cov.s[idx];
    out.s_re[idx] = traits::real(z[mask]);
  }

  // Axial channel: the imaginary grade >= 3 content forms a paravector
  // after division by the volume element.
  Multivector<S> upper;
  for (unsigned m = 0; m < kBladeCount; ++m)
    if (grade(m) >= 3) upper[m] = traits::from_real(traits::imag(z[m]));
  Multivector<S> kpara =
      g_product(upper, Multivector<S>::basis(kVolumeMask)) * traits::from_int(-1);
  out.k_scalar = traits::real(kpara[0]);
  for (int mu = 0; mu < 4; ++mu) {
    out.cov.k[mu] = traits::real(kpara[1u << mu]);
    if (metric_sign(mu) < 0) out.cov.k[mu] = -out.cov.k[mu];
  }

  out.cov.omega = traits::real(z[kVolumeMask]);
  out.omega_im = traits::imag(z[kVolumeMask]);
  return out;
}

template <class S>
void require_finite(const Column<S>& c, const FormOf<S>& a_form) {
  if constexpr (!scalar_traits<S>::exact) {
    for (const auto& v : c)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InputError("non-finite spinor component");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!std::isfinite(a_form(i, j))) throw InputError("non-finite deformation entry");
  } else {
    (void)c;
    (void)a_form;
  }
}

}  // namespace detail

// Deformed observables of a column spinor. The classical part is the same
// pipeline run with the deformation switched off, so at A = 0 the split is
// exact and the deformation part vanishes identically.
template <class S>
QuantumCovariants<typename scalar_traits<S>::real_type> compute_b_covariants(
    const Column<S>& c, const FormOf<S>& a_form) {
  detail::require_finite(c, a_form);
  FormOf<S> b_form = minkowski_form<S>() + a_form;
  auto full = detail::b_slots(c, b_form);
  auto classical = detail::b_slots(c, minkowski_form<S>());

  QuantumCovariants<typename scalar_traits<S>::real_type> qc;
  qc.b = full.cov;
  qc.classical = classical.cov;
  qc.a_part = full.cov - classical.cov;
  qc.k_scalar = full.k_scalar;
  qc.sigma_im = full.sigma_im;
  qc.j_im = full.j_im;
  qc.s_re = full.s_re;
  qc.omega_im = full.omega_im;
  return qc;
}

// Deformed class label, by the same zero-pattern rules as the classical
// classifier applied to the deformed channels.
template <class R>
int b_classify(const QuantumCovariants<R>& qc, double tol = 1e-9) {
  return classify(qc.b, tol);
}

// One classical/deformed label pair with its admissibility verdict.
// conditions lists the channel cancellations and activations responsible
// for a label change; marginal flags values inside the quarantine band
// (0, 10 * threshold] where the discontinuous labels cannot be trusted.
struct DualityRecord {
  int classical_class{};
  int b_class{};
  bool admissible{};
  bool degenerate{};
  bool marginal{};
  std::vector<std::string> conditions;
};

// Admissible label pairs of the classical/deformed correspondence:
// a deformed regular class with both scalars active can arise from any
// classical class; losing exactly one scalar restricts the source to the
// matching regular classes; deformed singular classes arise only from
// classical class 1.
inline bool table_admissible(int classical_label, int b_label) {
  switch (b_label) {
    case 1:
      return classical_label >= 1 && classical_label <= 6;
    case 2:
      return classical_label == 3 || classical_label == 1;
    case 3:
      return classical_label == 2 || classical_label == 1;
    case 4:
    case 5:
    case 6:
      return classical_label == 1;
    default:
      return false;
  }
}

namespace detail {

template <class R>
bool channel_zero(const R& v, double thr) {
  if constexpr (std::is_same_v<R, double>)
    return std::abs(v) <= thr;
  else
    return sgn(v) == 0;
}

template <class R>
bool any_marginal(const RealCovariants<R>& cov, double tol) {
  double thr = 10.0 * tol * std::max(1.0, covariant_scale(cov));
  auto in_band = [&](const R& v) {
    double m = std::abs(approx_real(v));
    return m > 0.0 && m <= thr;
  };
  if (in_band(cov.sigma) || in_band(cov.omega)) return true;
  for (int i = 0; i < 6; ++i)
    if (in_band(cov.s[i])) return true;
  for (int i = 0; i < 4; ++i)
    if (in_band(cov.k[i])) return true;
  return false;
}

template <class R>
void fire_conditions(const QuantumCovariants<R>& qc, double tol,
                     std::vector<std::string>& conditions) {
  double thr_c = tol * std::max(1.0, covariant_scale(qc.classical));
  double thr_b = tol * std::max(1.0, covariant_scale(qc.b));

  auto scalar_state = [&](const char* name, const R& classical, const R& deformed) {
    bool c0 = channel_zero(classical, thr_c);
    bool b0 = channel_zero(deformed, thr_b);
    if (!c0 && b0)
      conditions.push_back(std::string(name) + " = -" + name + "(A)");
    else if (c0 && !b0)
      conditions.push_back(std::string(name) + "(A) != 0");
  };
  scalar_state("sigma", qc.classical.sigma, qc.b.sigma);
  scalar_state("omega", qc.classical.omega, qc.b.omega);

  auto tuple_state = [&](const char* name, auto classical_values, auto deformed_values) {
    bool c0 = true, b0 = true;
    for (const auto& v : classical_values) c0 = c0 && channel_zero(v, thr_c);
    for (const auto& v : deformed_values) b0 = b0 && channel_zero(v, thr_b);
    if (!c0 && b0)
      conditions.push_back(std::string(name) + " = -" + name + "(A)");
    else if (c0 && !b0)
      conditions.push_back(std::string(name) + "(A) != 0");
  };
  tuple_state("S", qc.classical.s, qc.b.s);
  tuple_state("K", qc.classical.k, qc.b.k);
}

}  // namespace detail

// Computes both labels for one (spinor, deformation) input and checks the
// pair against the correspondence table. At A = 0 the two pipelines agree
// bit for bit, so the pair is degenerate-diagonal and trivially admissible.
template <class S>
DualityRecord duality_record(const Column<S>& c, const FormOf<S>& a_form, double tol = 1e-9) {
  auto qc = compute_b_covariants(c, a_form);

  DualityRecord rec;
  rec.classical_class = classify(qc.classical, tol);
  rec.b_class = b_classify(qc, tol);
  rec.degenerate = a_form.is_zero();
  rec.marginal =
      detail::any_marginal(qc.classical, tol) || detail::any_marginal(qc.b, tol);
  detail::fire_conditions(qc, tol, rec.conditions);
  if (rec.degenerate)
    rec.admissible = rec.classical_class == rec.b_class;
  else
    rec.admissible = table_admissible(rec.classical_class, rec.b_class);
  return rec;
}

template <class S>
DualityRecord duality(const Column<S>& c, const FormOf<S>& a_form, double tol = 1e-9) {
  DualityRecord rec = duality_record(c, a_form, tol);
  if (!rec.admissible) {
    std::string msg = "inadmissible class pair: classical " +
                      std::to_string(rec.classical_class) + " vs deformed " +
                      std::to_string(rec.b_class) + "_B";
    if (!rec.conditions.empty()) {
      msg += "; conditions:";
      for (const auto& cond : rec.conditions) msg += " [" + cond + "]";
    }
    throw DualityViolationError(msg);
  }
  return rec;
}

// One scan sample that landed outside the correspondence table.
struct ScanViolation {
  std::uint64_t index{};
  int classical_class{};
  int b_class{};
  std::vector<std::string> conditions;
};

// Frequency table of (classical, deformed) label pairs over random samples,
// with quarantined and unclassifiable samples tallied separately.
struct ScanResult {
  std::uint64_t total{};
  std::uint64_t marginal{};
  std::uint64_t unclassifiable{};
  std::map<std::pair<int, int>, std::uint64_t> counts;
  std::vector<ScanViolation> violations;
};

namespace detail {

inline unsigned scan_thread_count(std::uint64_t n_samples) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  n = std::min(n, 8u);
  if (const char* env = std::getenv("QCLIFF_THREADS")) {
    char* end = nullptr;
    long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) n = static_cast<unsigned>(parsed);
  }
  if (n_samples < n) n = static_cast<unsigned>(std::max<std::uint64_t>(n_samples, 1));
  return n;
}

inline void scan_range(std::uint64_t begin, std::uint64_t end, std::uint64_t seed,
                       double magnitude, double tol, ScanResult& out) {
  for (std::uint64_t i = begin; i < end; ++i) {
    SplitMix64 rng{derive_seed(seed, i)};
    Column<Complex64> c;
    for (int k = 0; k < 4; ++k)
      c[k] = Complex64{rng.next_symmetric(1.0), rng.next_symmetric(1.0)};
    BilinearForm<double> a = random_antisymmetric<double>(rng, magnitude);

    out.total += 1;
    DualityRecord rec;
    try {
      rec = duality_record(c, a, tol);
    } catch (const UnclassifiableError&) {
      out.unclassifiable += 1;
      continue;
    }
    out.counts[{rec.classical_class, rec.b_class}] += 1;
    if (rec.marginal) {
      out.marginal += 1;
    } else if (!rec.admissible) {
      out.violations.push_back(
          {i, rec.classical_class, rec.b_class, std::move(rec.conditions)});
    }
  }
}

}  // namespace detail

// Seeded random scan of the correspondence table. Each sample derives its
// own generator from (seed, index), so the result is independent of the
// thread partitioning and reproducible across runs.
inline ScanResult duality_table_scan(std::uint64_t n_samples, double magnitude,
                                     std::uint64_t seed, double tol = 1e-9) {
  unsigned n_threads = detail::scan_thread_count(n_samples);
  std::vector<ScanResult> parts(n_threads);
  if (n_threads <= 1) {
    detail::scan_range(0, n_samples, seed, magnitude, tol, parts[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    std::uint64_t chunk = (n_samples + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      std::uint64_t begin = std::min<std::uint64_t>(n_samples, t * chunk);
      std::uint64_t end = std::min<std::uint64_t>(n_samples, begin + chunk);
      workers.emplace_back(detail::scan_range, begin, end, seed, magnitude, tol,
                           std::ref(parts[t]));
    }
    for (auto& w : workers) w.join();
  }

  ScanResult merged;
  for (auto& part : parts) {
    merged.total += part.total;
    merged.marginal += part.marginal;
    merged.unclassifiable += part.unclassifiable;
    for (const auto& [pair, count] : part.counts) merged.counts[pair] += count;
    for (auto& v : part.violations) merged.violations.push_back(std::move(v));
  }
  std::sort(merged.violations.begin(), merged.violations.end(),
            [](const ScanViolation& x, const ScanViolation& y) { return x.index < y.index; });
  return merged;
}

struct SingularSolveOptions {
  int max_iterations = 40;
  double tol = 1e-12;
  double fd_step = 1e-7;
};

// Adjusts the lower two spinor components so that both deformed scalars
// vanish, turning a regular input into a singular deformed one. Newton
// iteration on (sigma_B, omega_B) with a finite-difference Jacobian, the
// minimum-norm pseudoinverse step and a halving line search.
inline Column<Complex64> solve_singular_b(const Column<Complex64>& start,
                                          const BilinearForm<double>& a_form,
                                          const SingularSolveOptions& opts = {}) {
  std::array<double, 4> x = {start[2].real(), start[2].imag(), start[3].real(),
                             start[3].imag()};

  auto assemble = [&](const std::array<double, 4>& v) {
    Column<Complex64> c = start;
    c[2] = Complex64{v[0], v[1]};
    c[3] = Complex64{v[2], v[3]};
    return c;
  };
  auto target = [&](const std::array<double, 4>& v) {
    auto qc = compute_b_covariants(assemble(v), a_form);
    double scale = std::max(1.0, covariant_scale(qc.b));
    return std::array<double, 3>{qc.b.sigma, qc.b.omega, scale};
  };
  auto norm2 = [](double f0, double f1) { return f0 * f0 + f1 * f1; };

  auto f = target(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (std::max(std::abs(f[0]), std::abs(f[1])) <= opts.tol * f[2]) return assemble(x);

    // Forward-difference Jacobian of (sigma_B, omega_B) in the four reals.
    double jac[2][4];
    for (int k = 0; k < 4; ++k) {
      std::array<double, 4> xp = x;
      xp[k] += opts.fd_step;
      auto fp = target(xp);
      jac[0][k] = (fp[0] - f[0]) / opts.fd_step;
      jac[1][k] = (fp[1] - f[1]) / opts.fd_step;
    }

    // Minimum-norm step dx = -J^T (J J^T)^{-1} f.
    double g00 = 0, g01 = 0, g11 = 0;
    for (int k = 0; k < 4; ++k) {
      g00 += jac[0][k] * jac[0][k];
      g01 += jac[0][k] * jac[1][k];
      g11 += jac[1][k] * jac[1][k];
    }
    double det = g00 * g11 - g01 * g01;
    if (std::abs(det) < 1e-30) throw ConvergenceError("singular Jacobian in scalar solve");
    double y0 = (g11 * f[0] - g01 * f[1]) / det;
    double y1 = (g00 * f[1] - g01 * f[0]) / det;
    std::array<double, 4> dx;
    for (int k = 0; k < 4; ++k) dx[k] = -(jac[0][k] * y0 + jac[1][k] * y1);

    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 16; ++halving) {
      std::array<double, 4> xn = x;
      for (int k = 0; k < 4; ++k) xn[k] += lambda * dx[k];
      auto fn = target(xn);
      if (norm2(fn[0], fn[1]) < norm2(f[0], f[1])) {
        x = xn;
        f = fn;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) throw ConvergenceError("line search stalled in scalar solve");
  }
  if (std::max(std::abs(f[0]), std::abs(f[1])) <= opts.tol * f[2]) return assemble(x);
  throw ConvergenceError("scalar solve did not converge");
}

// Matrix images of the conjugated generators exp(A/2) g_mu exp(-A/2).
// Purely diagnostic: displays how the deformation tilts the generators
// while preserving their metric relations.
template <class S>
std::array<Mat4<S>, 4> conjugated_generator_images(const FormOf<S>& a_form,
                                                   const ExpOptions& opts = {}) {
  auto gens = conjugated_generators<S>(a_form, opts);
  std::array<Mat4<S>, 4> images;
  for (int mu = 0; mu < 4; ++mu) images[mu] = dirac_rep(gens[mu]);
  return images;
}

}  // namespace qcliff
