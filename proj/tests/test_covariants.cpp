#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <complex>

#include "qcliff/covariants.hpp"
#include "qcliff/engine.hpp"
#include "qcliff/random.hpp"

using namespace qcliff;

namespace {

using X = ExactComplex;
using Q = mpq_class;

Column<X> col(X a, X b, X c, X d) { return {a, b, c, d}; }

X re(long n, long d = 1) { return X{Q(n, d), Q(0)}; }
X im(long n, long d = 1) { return X{Q(0), Q(n, d)}; }

Column<Complex64> to_float(const Column<X>& c) {
  Column<Complex64> out;
  for (int i = 0; i < 4; ++i) out[i] = {c[i].re.get_d(), c[i].im.get_d()};
  return out;
}

bool cov_equal(const RealCovariants<Q>& a, const RealCovariants<Q>& b) {
  if (a.sigma != b.sigma || a.omega != b.omega) return false;
  for (int i = 0; i < 4; ++i)
    if (a.j[i] != b.j[i] || a.k[i] != b.k[i]) return false;
  for (int i = 0; i < 6; ++i)
    if (a.s[i] != b.s[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("observables of hand-worked spinors") {
  SECTION("unit spinor") {
    auto cov = compute_covariants(col(re(1), re(0), re(0), re(0)));
    CHECK(cov.sigma == 1);
    CHECK(cov.omega == 0);
    CHECK(cov.j == std::array<Q, 4>{1, 0, 0, 0});
    CHECK(cov.k == std::array<Q, 4>{0, 0, 0, -1});
    CHECK(cov.s == std::array<Q, 6>{0, 0, 0, 1, 0, 0});
  }
  SECTION("mixed spinor with every channel active") {
    auto cov = compute_covariants(col(re(1), re(1, 2), im(1), re(0)));
    CHECK(cov.sigma == Q(1, 4));
    CHECK(cov.omega == -2);
    CHECK(cov.j == std::array<Q, 4>{Q(9, 4), 0, -1, 0});
    CHECK(cov.k == std::array<Q, 4>{0, -1, 0, Q(-7, 4)});
    CHECK(cov.s == std::array<Q, 6>{-1, 0, -2, Q(-1, 4), 0, 1});
  }
  SECTION("phase rotated upper-lower pair") {
    auto cov = compute_covariants(col(re(1), re(0), im(1), re(0)));
    CHECK(cov.sigma == 0);
    CHECK(cov.omega == -2);
    CHECK(cov.j == std::array<Q, 4>{2, 0, 0, 0});
    CHECK(cov.k == std::array<Q, 4>{0, 0, 0, -2});
    CHECK(cov.s == std::array<Q, 6>{0, 0, -2, 0, 0, 0});
  }
  SECTION("singular spinor with tensor and axial channels") {
    auto cov = compute_covariants(
        col(re(1), X{Q(1), Q(1)}, re(-1), X{Q(1), Q(1)}));
    CHECK(cov.sigma == 0);
    CHECK(cov.omega == 0);
    CHECK(cov.j == std::array<Q, 4>{6, 0, 0, -6});
    CHECK(cov.k == std::array<Q, 4>{-2, 0, 0, 2});
    CHECK(cov.s == std::array<Q, 6>{-4, 4, 0, 0, -4, 4});
  }
  SECTION("singular spinor without axial channel") {
    auto cov = compute_covariants(col(re(1), re(0), re(0), re(1)));
    CHECK(cov.sigma == 0);
    CHECK(cov.omega == 0);
    CHECK(cov.j == std::array<Q, 4>{2, 2, 0, 0});
    CHECK(cov.k == std::array<Q, 4>{0, 0, 0, 0});
    CHECK(cov.s == std::array<Q, 6>{0, 2, 0, 2, 0, 0});
  }
  SECTION("singular spinor without tensor channel") {
    auto cov = compute_covariants(col(re(1), re(0), re(1), re(0)));
    CHECK(cov.sigma == 0);
    CHECK(cov.omega == 0);
    CHECK(cov.j == std::array<Q, 4>{2, 0, 0, 2});
    CHECK(cov.k == std::array<Q, 4>{-2, 0, 0, -2});
    CHECK(cov.s == std::array<Q, 6>{0, 0, 0, 0, 0, 0});
  }
}

TEST_CASE("class labels of the six representatives") {
  CHECK(classify(compute_covariants(col(re(1), re(1, 2), im(1), re(0)))) == 1);
  CHECK(classify(compute_covariants(col(re(1), re(0), re(0), re(0)))) == 2);
  CHECK(classify(compute_covariants(col(re(1), re(0), im(1), re(0)))) == 3);
  CHECK(classify(compute_covariants(
            col(re(1), X{Q(1), Q(1)}, re(-1), X{Q(1), Q(1)}))) == 4);
  CHECK(classify(compute_covariants(col(re(1), re(0), re(0), re(1)))) == 5);
  CHECK(classify(compute_covariants(col(re(1), re(0), re(1), re(0)))) == 6);
  CHECK_THROWS_AS(classify(compute_covariants(col(re(0), re(0), re(0), re(0)))),
                  UnclassifiableError);
}

TEST_CASE("classifier thresholds are scale aware") {
  RealCovariants<double> cov;
  cov.sigma = 1.0;
  cov.s[3] = 1.0;
  cov.k[3] = -1.0;
  cov.j[0] = 1.0;

  cov.omega = 1e-12;
  CHECK(classify(cov, 1e-9) == 2);
  cov.omega = 1e-3;
  CHECK(classify(cov, 1e-9) == 1);

  // Scale up: a fixed absolute wobble must still count as zero.
  RealCovariants<double> big;
  big.sigma = 1e12;
  big.j[0] = 1e12;
  big.omega = 1.0;
  big.s[3] = 1e12;
  CHECK(classify(big, 1e-9) == 2);

  // Exact backend ignores the tolerance: any nonzero rational counts.
  RealCovariants<Q> exact;
  exact.sigma = 1;
  exact.omega = Q(1, 1000000000000L);
  CHECK(classify(exact, 1e-9) == 1);
}

TEST_CASE("quadratic identities hold exactly") {
  SplitMix64 rng{913};
  for (int trial = 0; trial < 30; ++trial) {
    auto c = random_column<X>(rng);
    auto res = fierz_residuals(compute_covariants(c));
    REQUIRE(res.is_exactly_zero());
  }
  // And with a residual that must not vanish: perturb one covariant.
  auto cov = compute_covariants(col(re(1), re(0), re(0), re(0)));
  cov.sigma = cov.sigma + 1;
  CHECK_FALSE(fierz_residuals(cov).is_exactly_zero());
}

TEST_CASE("aggregated observables reproduce the density matrix") {
  SplitMix64 rng{914};
  for (int trial = 0; trial < 25; ++trial) {
    auto c = random_column<X>(rng);
    auto z = spin_density(c);
    auto agg = aggregate(compute_covariants(c));
    CHECK(dirac_rep(agg) == z);
  }
  // Hand check: the unit spinor gives Z = 4 E11.
  auto z = spin_density(col(re(1), re(0), re(0), re(0)));
  CHECK(z == Mat4<X>::unit(0, 0) * re(4));
}

TEST_CASE("rank-one identities of the density matrix") {
  SplitMix64 rng{915};
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_column<X>(rng);
    auto res = singular_identity_residuals(spin_density(c), c);
    CHECK(res.max() == 0.0);
    CHECK(res.aggregate_distance == 0.0);
  }
}

TEST_CASE("boomerang test") {
  SplitMix64 rng{916};
  auto c = random_column<X>(rng);
  CHECK(is_boomerang(spin_density(c)));
  auto skew = blade_matrices<X>()[0b0001] * X{Q(0), Q(1)};
  CHECK_FALSE(is_boomerang(skew));
}

TEST_CASE("observables are phase invariant and scale quadratically") {
  SplitMix64 rng{917};
  for (int trial = 0; trial < 10; ++trial) {
    auto c = random_column<X>(rng);
    Column<X> rotated, scaled;
    X phase = im(1);
    X lambda = re(-3, 2);
    for (int i = 0; i < 4; ++i) {
      rotated[i] = phase * c[i];
      scaled[i] = lambda * c[i];
    }
    auto cov = compute_covariants(c);
    CHECK(cov_equal(compute_covariants(rotated), cov));

    auto covs = compute_covariants(scaled);
    RealCovariants<Q> expected = cov;
    Q l2 = Q(9, 4);
    expected.sigma *= l2;
    expected.omega *= l2;
    for (int i = 0; i < 4; ++i) {
      expected.j[i] *= l2;
      expected.k[i] *= l2;
    }
    for (int i = 0; i < 6; ++i) expected.s[i] *= l2;
    CHECK(cov_equal(covs, expected));
  }
}

TEST_CASE("float backend agrees with the exact one") {
  SplitMix64 rng{918};
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_column<X>(rng);
    auto exact = compute_covariants(c);
    auto approx = compute_covariants(to_float(c));
    CHECK(std::abs(approx.sigma - exact.sigma.get_d()) < 1e-12);
    CHECK(std::abs(approx.omega - exact.omega.get_d()) < 1e-12);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(approx.j[i] - exact.j[i].get_d()) < 1e-12);
      CHECK(std::abs(approx.k[i] - exact.k[i].get_d()) < 1e-12);
    }
    for (int i = 0; i < 6; ++i)
      CHECK(std::abs(approx.s[i] - exact.s[i].get_d()) < 1e-12);

    auto fr = fierz_residuals(compute_covariants(to_float(c)));
    CHECK(fr.max_abs_approx() < 1e-10);
  }
}

TEST_CASE("antisymmetric tensor accessor") {
  auto cov = compute_covariants(col(re(1), re(1, 2), im(1), re(0)));
  CHECK(cov.s_at(0, 1) == -1);
  CHECK(cov.s_at(1, 0) == 1);
  CHECK(cov.s_at(2, 2) == 0);
  CHECK(cov.s_at(3, 0) == 2);
}
