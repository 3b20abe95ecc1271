#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdlib>
#include <vector>

#include "qcliff/quantum.hpp"

using namespace qcliff;

namespace {

using X = ExactComplex;
using Q = mpq_class;
using MV = Multivector<X>;
using FormX = BilinearForm<Q>;

Q frac(const char* text) {
  Q q(text);
  q.canonicalize();
  return q;
}

X re(long n, long d = 1) { return X{Q(n, d), Q(0)}; }
X im(long n, long d = 1) { return X{Q(0), Q(n, d)}; }

// Deformation used for the worked numbers below.
FormX sample_deformation() {
  return FormX::antisymmetric({{0, 1, Q(1, 4)},
                               {0, 2, Q(-1, 3)},
                               {0, 3, Q(1, 5)},
                               {1, 2, Q(1, 2)},
                               {1, 3, Q(-2, 7)},
                               {2, 3, Q(1, 11)}});
}

BilinearForm<double> to_float_form(const FormX& a) {
  BilinearForm<double> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.at(i, j) = a(i, j).get_d();
  return out;
}

Column<Complex64> to_float(const Column<X>& c) {
  Column<Complex64> out;
  for (int i = 0; i < 4; ++i) out[i] = {c[i].re.get_d(), c[i].im.get_d()};
  return out;
}

// Independent expansion of the deformation part of an element, written
// directly from the coefficient formulas:
//   scalar    sum h^{mn} A_mn + p (A01 A23 - A02 A13 + A03 A12)
//   vector    sum over triples h^{mnr} (A_mn g_r + A_rm g_n + A_nr g_m)
//   bivector  p (A23 e01 - A13 e02 + A12 e03 + A03 e12 - A02 e13 + A01 e23)
MV closed_form_a_part(const MV& psi, const FormX& a) {
  MV out;
  constexpr std::array<std::pair<int, int>, 6> pairs = {
      std::pair<int, int>{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (auto [mu, nu] : pairs)
    out[0] += psi[(1u << mu) | (1u << nu)] * X{a(mu, nu), Q(0)};
  X p = psi[0b1111];
  out[0] += p * X{a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2), Q(0)};

  constexpr std::array<std::array<int, 3>, 4> triples = {
      std::array<int, 3>{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (auto [mu, nu, rho] : triples) {
    X h = psi[(1u << mu) | (1u << nu) | (1u << rho)];
    out[1u << rho] += h * X{a(mu, nu), Q(0)};
    out[1u << nu] += h * X{a(rho, mu), Q(0)};
    out[1u << mu] += h * X{a(nu, rho), Q(0)};
  }

  out[0b0011] += p * X{a(2, 3), Q(0)};
  out[0b0101] += p * X{-a(1, 3), Q(0)};
  out[0b1001] += p * X{a(1, 2), Q(0)};
  out[0b0110] += p * X{a(0, 3), Q(0)};
  out[0b1010] += p * X{-a(0, 2), Q(0)};
  out[0b1100] += p * X{a(0, 1), Q(0)};
  return out;
}

}  // namespace

TEST_CASE("deformed idempotent") {
  SECTION("no deformation recovers the classical idempotent") {
    auto fb = idempotent_f_b<X>(FormX::zero());
    CHECK(fb.f_b == ideal_idempotent<X>());
    CHECK(fb.a_part.is_zero());
  }
  SECTION("deformed idempotency and the closed-form correction") {
    SplitMix64 rng{301};
    for (int trial = 0; trial < 30; ++trial) {
      FormX a = random_antisymmetric<Q>(rng, 1.0);
      FormX b = FormX::minkowski() + a;
      auto fb = idempotent_f_b<X>(a);
      CHECK(b_product(fb.f_b, fb.f_b, b) == fb.f_b);

      MV expected;
      X quarter_i = X{Q(0), Q(1, 4)};
      expected[0] = quarter_i * X{a(1, 2), Q(0)};
      expected[0b0001] = quarter_i * X{a(1, 2), Q(0)};
      expected[0b0010] = quarter_i * X{a(2, 0), Q(0)};
      expected[0b0100] = quarter_i * X{a(0, 1), Q(0)};
      CHECK(fb.a_part == expected);
    }
  }
}

TEST_CASE("deformation part of an element") {
  FormX a = sample_deformation();
  SECTION("single coefficient examples") {
    CHECK(psi_a_part(MV::basis(0b0110), a) == MV::scalar(X{a(1, 2), Q(0)}));

    MV triple = psi_a_part(MV::basis(0b0111), a);
    MV expected;
    expected[0b0001] = X{a(1, 2), Q(0)};
    expected[0b0010] = X{a(2, 0), Q(0)};
    expected[0b0100] = X{a(0, 1), Q(0)};
    CHECK(triple == expected);
  }
  SECTION("vanishes without deformation and lives in grades 0..2") {
    SplitMix64 rng{302};
    for (int trial = 0; trial < 25; ++trial) {
      MV psi = random_multivector<X>(rng);
      CHECK(psi_a_part(psi, FormX::zero()).is_zero());
      auto support = psi_a_part(psi, a).grade_support();
      CHECK_FALSE(support[3]);
      CHECK_FALSE(support[4]);
    }
  }
  SECTION("matches the coefficient-level closed form") {
    SplitMix64 rng{303};
    for (int trial = 0; trial < 25; ++trial) {
      MV psi = random_multivector<X>(rng);
      FormX arand = random_antisymmetric<Q>(rng, 1.0);
      CHECK(psi_a_part(psi, arand) == closed_form_a_part(psi, arand));
    }
  }
}

TEST_CASE("volume monomial under the deformed product") {
  FormX a = sample_deformation();
  FormX b = FormX::minkowski() + a;

  MV expected = MV::basis(0b1111);
  expected += closed_form_a_part(MV::basis(0b1111), a);

  CHECK(blade_monomial<X>(0b1111, b) == expected);

  // The same monomial assembled one generator product at a time.
  MV step = MV::basis(0b1000);
  step = b_product(MV::basis(0b0100), step, b);
  step = b_product(MV::basis(0b0010), step, b);
  step = b_product(MV::basis(0b0001), step, b);
  CHECK(step == expected);
}

TEST_CASE("deformed element assembly") {
  FormX a = sample_deformation();
  FormX b = FormX::minkowski() + a;

  SECTION("scalars are untouched") {
    auto bs = build_b_element(MV::scalar(re(1)), a);
    CHECK(bs.total() == MV::scalar(re(1)));
    CHECK(bs.s == 0);
  }
  SECTION("coefficients assembled through deformed monomials") {
    SplitMix64 rng{304};
    for (int trial = 0; trial < 20; ++trial) {
      MV psi = random_multivector<X>(rng);
      auto bs = build_b_element(psi, a);
      CHECK(bs.total() == tau(psi, b));

      MV assembled;
      for (unsigned m = 0; m < kBladeCount; ++m)
        assembled += blade_monomial<X>(m, b) * psi[m];
      CHECK(bs.total() == assembled);

      CHECK(bs.s == scalar_traits<X>::real(closed_form_a_part(psi, a)[0]));
      CHECK(build_b_element(psi, FormX::zero()).total() == psi);
    }
  }
}

TEST_CASE("four-term decomposition of the deformed product") {
  FormX a = sample_deformation();
  FormX b = FormX::minkowski() + a;
  auto fb = idempotent_f_b<X>(a);

  SECTION("no deformation leaves a single term") {
    SplitMix64 rng{305};
    MV psi = random_multivector<X>(rng);
    auto terms = decompose_b_spinor(build_b_element(psi, FormX::zero()));
    CHECK(terms.terms[0] == g_product(psi, ideal_idempotent<X>()));
    CHECK(terms.terms[1].is_zero());
    CHECK(terms.terms[2].is_zero());
    CHECK(terms.terms[3].is_zero());
  }
  SECTION("terms sum to the full product") {
    SplitMix64 rng{306};
    for (int trial = 0; trial < 50; ++trial) {
      MV psi = random_multivector<X>(rng);
      FormX arand = random_antisymmetric<Q>(rng, 1.0);
      FormX brand = FormX::minkowski() + arand;
      auto bs = build_b_element(psi, arand);
      auto terms = decompose_b_spinor(bs);
      auto fr = idempotent_f_b<X>(arand);
      CHECK(terms.sum() == b_product(bs.total(), fr.f_b, brand));
    }
  }
  (void)b;
  (void)fb;
}

TEST_CASE("deformed observables of worked examples") {
  SECTION("unit spinor with a two-entry deformation") {
    FormX a = FormX::antisymmetric({{0, 1, Q(1, 4)}, {1, 2, Q(1, 2)}});
    Column<X> c = {re(1), re(0), re(0), re(0)};
    auto qc = compute_b_covariants(c, a);

    CHECK(qc.b.sigma == Q(39, 32));
    CHECK(qc.b.j == std::array<Q, 4>{Q(5, 4), Q(1, 8), Q(-1, 8), 0});
    CHECK(qc.j_im == std::array<Q, 4>{0, 0, Q(1, 8), 0});
    CHECK(qc.b.s == std::array<Q, 6>{0, Q(1, 8), 0, 1, 0, 0});
    CHECK(qc.s_re == std::array<Q, 6>{Q(-1, 8), 0, 0, Q(1, 2), 0, 0});
    CHECK(qc.b.k == std::array<Q, 4>{0, 0, 0, -1});
    CHECK(qc.k_scalar == 0);
    CHECK(qc.b.omega == 0);

    CHECK(qc.classical.sigma == 1);
    CHECK(qc.a_part.sigma == Q(7, 32));
    CHECK(qc.a_part.j == std::array<Q, 4>{Q(1, 4), Q(1, 8), Q(-1, 8), 0});
  }
  SECTION("mixed spinor with a full deformation") {
    FormX a = sample_deformation();
    Column<X> c = {re(1), re(1, 2), im(1), re(0)};
    auto qc = compute_b_covariants(c, a);

    CHECK(qc.b.sigma == frac("8320853/15523200"));
    CHECK(qc.sigma_im == frac("175083/677600"));
    CHECK(qc.b.j[0] == frac("1537563/474320"));
    CHECK(qc.b.j[1] == frac("-1271107/2032800"));
    CHECK(qc.b.j[2] == frac("-223661/117600"));
    CHECK(qc.b.j[3] == frac("3589/7392"));
    CHECK(qc.j_im[0] == frac("-9979/33880"));
    CHECK(qc.j_im[1] == frac("-47/2772"));
    CHECK(qc.j_im[2] == frac("-249/5600"));
    CHECK(qc.j_im[3] == frac("-1721/11088"));
    CHECK(qc.b.s[0] == frac("-8807/10164"));
    CHECK(qc.b.s[1] == frac("-3937/12320"));
    CHECK(qc.b.s[2] == frac("-56047/18480"));
    CHECK(qc.b.s[3] == frac("-179/3080"));
    CHECK(qc.b.s[4] == frac("949/1320"));
    CHECK(qc.b.s[5] == frac("73207/36960"));
    CHECK(qc.s_re[0] == frac("93647/406560"));
    CHECK(qc.s_re[1] == frac("-15277/64680"));
    CHECK(qc.s_re[2] == frac("1513/9240"));
    CHECK(qc.s_re[3] == frac("-313/2100"));
    CHECK(qc.s_re[4] == frac("-533/5544"));
    CHECK(qc.s_re[5] == frac("-103/1680"));
    CHECK(qc.b.k == std::array<Q, 4>{Q(-11, 40), frac("-1019/1320"), Q(2, 11),
                                     frac("-4309/2310")});
    CHECK(qc.k_scalar == Q(107, 88));
    CHECK(qc.omega_im == Q(107, 88));
    CHECK(qc.b.omega == frac("-9113/4620"));

    CHECK(qc.classical.sigma == Q(1, 4));
    CHECK(qc.classical.omega == -2);
    CHECK(qc.classical.j == std::array<Q, 4>{Q(9, 4), 0, -1, 0});
    CHECK(qc.classical.s == std::array<Q, 6>{-1, 0, -2, Q(-1, 4), 0, 1});
    CHECK(qc.classical.k == std::array<Q, 4>{0, -1, 0, Q(-7, 4)});
    CHECK(qc.a_part.omega == Q(127, 4620));

    CHECK(b_classify(qc) == 1);
  }
}

TEST_CASE("switching the deformation off collapses the split") {
  SplitMix64 rng{307};
  for (int trial = 0; trial < 25; ++trial) {
    auto c = random_column<X>(rng);
    auto qc = compute_b_covariants(c, FormX::zero());
    auto classical = compute_covariants(c);
    CHECK(qc.b.sigma == classical.sigma);
    CHECK(qc.b.omega == classical.omega);
    CHECK(qc.b.j == classical.j);
    CHECK(qc.b.s == classical.s);
    CHECK(qc.b.k == classical.k);
    CHECK(qc.a_part.sigma == 0);
    CHECK(qc.a_part.omega == 0);
    CHECK(qc.a_part.j == std::array<Q, 4>{0, 0, 0, 0});
    CHECK(qc.sigma_im == 0);
    CHECK(qc.omega_im == 0);
    CHECK(qc.k_scalar == 0);

    bool classical_ok = true;
    try {
      if (b_classify(qc) != classify(classical)) classical_ok = false;
    } catch (const UnclassifiableError&) {
      classical_ok = false;
    }
    CHECK(classical_ok);
  }
}

TEST_CASE("deformed observables approach the classical ones linearly") {
  Column<Complex64> c = {Complex64{1, 0}, Complex64{0.5, 0}, Complex64{0, 1},
                         Complex64{0, 0}};
  BilinearForm<double> a = to_float_form(sample_deformation());

  auto deviation = [&](double t) {
    auto qc = compute_b_covariants(c, a * t);
    return covariant_scale(qc.a_part);
  };
  double d4 = deviation(1e-4);
  double d5 = deviation(1e-5);
  double ratio = d4 / (10.0 * d5);
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
}

TEST_CASE("correspondence table membership") {
  CHECK(table_admissible(1, 1));
  CHECK(table_admissible(6, 1));
  CHECK(table_admissible(3, 2));
  CHECK(table_admissible(1, 2));
  CHECK_FALSE(table_admissible(2, 2));
  CHECK(table_admissible(2, 3));
  CHECK_FALSE(table_admissible(5, 3));
  CHECK(table_admissible(1, 4));
  CHECK(table_admissible(1, 5));
  CHECK(table_admissible(1, 6));
  CHECK_FALSE(table_admissible(2, 4));
  CHECK_FALSE(table_admissible(4, 5));
}

TEST_CASE("label pairs for hand inputs") {
  FormX a = sample_deformation();
  SECTION("no deformation gives the degenerate diagonal") {
    SplitMix64 rng{308};
    for (int trial = 0; trial < 10; ++trial) {
      auto c = random_column<X>(rng);
      auto rec = duality_record(c, FormX::zero());
      CHECK(rec.degenerate);
      CHECK(rec.admissible);
      CHECK(rec.classical_class == rec.b_class);
      CHECK(rec.conditions.empty());
    }
  }
  SECTION("regular input stays regular") {
    Column<X> c = {re(1), re(1, 2), im(1), re(0)};
    auto rec = duality(c, a);
    CHECK(rec.classical_class == 1);
    CHECK(rec.b_class == 1);
    CHECK(rec.admissible);
    CHECK(rec.conditions.empty());
    CHECK_FALSE(rec.degenerate);
  }
  SECTION("half-null input turns regular under deformation") {
    Column<X> c = {re(1), re(0), re(1), re(0)};
    auto rec = duality(c, a);
    CHECK(rec.classical_class == 6);
    CHECK(rec.b_class == 1);
    CHECK(rec.admissible);
    REQUIRE(rec.conditions.size() >= 2);
    CHECK(rec.conditions[0] == "sigma(A) != 0");
    CHECK(rec.conditions[1] == "omega(A) != 0");
  }
  SECTION("paired null components with a generic deformation") {
    SplitMix64 rng{309};
    for (int trial = 0; trial < 10; ++trial) {
      X u = random_scalar<X>(rng);
      X v = random_scalar<X>(rng);
      if (u.is_zero() && v.is_zero()) continue;
      Column<X> c = {u, v, u, v};
      auto rec = duality_record(c, a);
      CHECK(rec.b_class == 1);
    }
  }
}

TEST_CASE("constructed singular deformed input") {
  Column<Complex64> start = {Complex64{1, 0}, Complex64{0.5, 0}, Complex64{0, 1},
                             Complex64{0, 0}};
  BilinearForm<double> a = to_float_form(sample_deformation());

  auto solved = solve_singular_b(start, a);
  auto qc = compute_b_covariants(solved, a);
  double scale = std::max(1.0, covariant_scale(qc.b));
  CHECK(std::abs(qc.b.sigma) <= 1e-10 * scale);
  CHECK(std::abs(qc.b.omega) <= 1e-10 * scale);

  auto rec = duality_record(solved, a);
  CHECK(rec.classical_class == 1);
  CHECK(rec.b_class == 4);
  CHECK(rec.admissible);
  CHECK(rec.marginal);

  CHECK(rec.conditions == std::vector<std::string>{"sigma = -sigma(A)", "omega = -omega(A)"});
}

TEST_CASE("inadmissible pairs raise a diagnostic") {
  // A deformation with no effect on the classifying channels of this input
  // cannot exist for class 2 -> 2; force the check through a fabricated
  // record instead by calling the throwing entry point on a tiny scan.
  FormX a = sample_deformation();
  Column<X> weyl = {re(1), re(0), re(1), re(0)};
  CHECK_NOTHROW(duality(weyl, a));
  // classify/b_classify disagreement that violates the table cannot be
  // fabricated from real inputs here, so exercise the message path directly.
  try {
    throw DualityViolationError("inadmissible class pair: classical 2 vs deformed 2_B");
  } catch (const DualityViolationError& e) {
    CHECK(std::string(e.what()).find("2_B") != std::string::npos);
  }
}

TEST_CASE("quarantine band flags boundary samples") {
  Column<Complex64> c = {Complex64{1, 0}, Complex64{0, 0}, Complex64{0, 0},
                         Complex64{0, 0}};
  BilinearForm<double> tiny = to_float_form(sample_deformation()) * 1e-11;
  auto rec = duality_record(c, tiny, 1e-9);
  CHECK(rec.marginal);
}

TEST_CASE("correspondence scan") {
  SECTION("deterministic under a fixed seed") {
    auto r1 = duality_table_scan(300, 0.5, 42);
    auto r2 = duality_table_scan(300, 0.5, 42);
    CHECK(r1.total == 300);
    CHECK(r1.counts == r2.counts);
    CHECK(r1.marginal == r2.marginal);
    CHECK(r1.violations.empty());
    CHECK(r2.violations.empty());
  }
  SECTION("independent of the thread count") {
    auto base = duality_table_scan(200, 0.5, 7);
    setenv("QCLIFF_THREADS", "1", 1);
    auto single = duality_table_scan(200, 0.5, 7);
    setenv("QCLIFF_THREADS", "3", 1);
    auto three = duality_table_scan(200, 0.5, 7);
    unsetenv("QCLIFF_THREADS");
    CHECK(base.counts == single.counts);
    CHECK(base.counts == three.counts);
    CHECK(base.marginal == single.marginal);
    CHECK(base.marginal == three.marginal);
  }
  SECTION("no deformation lands on the diagonal") {
    auto r = duality_table_scan(200, 0.0, 11);
    CHECK(r.total == 200);
    CHECK(r.violations.empty());
    for (const auto& [pair, count] : r.counts) {
      CHECK(pair.first == pair.second);
      (void)count;
    }
  }
}

TEST_CASE("conjugated generator images") {
  SECTION("no deformation gives the standard matrices") {
    auto images = conjugated_generator_images<X>(BilinearForm<Q>::zero());
    const auto& gammas = gamma_matrices<X>();
    for (int mu = 0; mu < 4; ++mu) CHECK(images[mu] == gammas[mu]);
  }
  SECTION("metric relations survive the conjugation") {
    auto a = to_float_form(sample_deformation());
    auto images = conjugated_generator_images<Complex64>(a);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        Mat4<Complex64> anti = images[mu] * images[nu] + images[nu] * images[mu];
        double expected = (mu == nu) ? 2.0 * metric_sign(mu) : 0.0;
        Mat4<Complex64> residual =
            anti - Mat4<Complex64>::identity() * Complex64{expected, 0};
        CHECK(residual.norm_inf_approx() < 1e-10);
      }
  }
}
