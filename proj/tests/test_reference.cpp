#include <catch2/catch_amalgamated.hpp>

#include "qcliff/random.hpp"
#include "qcliff/reference_terms.hpp"

using namespace qcliff;

namespace {

using X = ExactComplex;
using Q = mpq_class;
using MV = Multivector<X>;
using FormX = BilinearForm<Q>;

FormX sample_deformation() {
  return FormX::antisymmetric({{0, 1, Q(1, 4)},
                               {0, 2, Q(-1, 3)},
                               {0, 3, Q(1, 5)},
                               {1, 2, Q(1, 2)},
                               {1, 3, Q(-2, 7)},
                               {2, 3, Q(1, 11)}});
}

}  // namespace

TEST_CASE("engine correction terms sum to the full product") {
  SplitMix64 rng{501};
  X scale = scalar_traits<X>::from_int(-4) * scalar_traits<X>::i();
  for (int trial = 0; trial < 200; ++trial) {
    MV psi = random_multivector<X>(rng);
    FormX a = random_antisymmetric<Q>(rng, 1.0);
    FormX b = FormX::minkowski() + a;

    auto terms = engine_reference_terms(psi, a);
    MV total = terms[0] + terms[1] + terms[2] + terms[3];

    auto bs = build_b_element(psi, a);
    auto fb = idempotent_f_b<X>(a);
    MV expected = b_product(bs.total(), fb.f_b, b) * scale;
    REQUIRE(total == expected);
  }
}

TEST_CASE("environment carries the printed coefficients") {
  SplitMix64 rng{502};
  MV psi = random_multivector<X>(rng);
  FormX a = sample_deformation();
  auto env = make_term_environment(psi, a);
  CHECK(env.b_value == psi[0b0000] + psi[0b0001]);
  CHECK(env.s_value == psi_a_part(psi, a)[0]);
}

TEST_CASE("printed displays without deformation") {
  // Three of the four displays expand cross terms that vanish at A = 0, and
  // every one of their printed products carries a deformation factor, so
  // both sides are zero there: the printed skeleton cannot deviate.
  SplitMix64 rng{503};
  for (int trial = 0; trial < 20; ++trial) {
    MV psi = random_multivector<X>(rng);
    auto report = compare_printed_terms(psi, FormX::zero());
    CHECK(report.per_display[0] == 0);
    CHECK(report.per_display[1] == 0);
    CHECK(report.per_display[3] == 0);
  }
}

TEST_CASE("discrepancy report") {
  SplitMix64 rng{504};
  MV psi = random_multivector<X>(rng);
  FormX a = sample_deformation();

  SECTION("deterministic for identical inputs") {
    auto r1 = compare_printed_terms(psi, a);
    auto r2 = compare_printed_terms(psi, a);
    CHECK(r1.str() == r2.str());
    CHECK(r1.entries.size() == r2.entries.size());
  }
  SECTION("structured text names every display and the catalogue") {
    auto report = compare_printed_terms(psi, a);
    std::string text = report.str();
    CHECK(text.find("display a") != std::string::npos);
    CHECK(text.find("display b") != std::string::npos);
    CHECK(text.find("display c") != std::string::npos);
    CHECK(text.find("display d") != std::string::npos);
    CHECK(text.find("catalogued irregularities:") != std::string::npos);
    CHECK(text.find("A_{01}{32}") != std::string::npos);
    CHECK(text.find("A_{02}{31}") != std::string::npos);

    std::size_t counted = 0;
    for (int d = 0; d < 4; ++d) counted += report.per_display[d];
    CHECK(counted == report.entries.size());
  }
  SECTION("anomaly catalogue is fixed") {
    const auto& anomalies = printed_term_anomalies();
    CHECK(anomalies.size() == 12);
    bool has_b_token = false, has_c_token = false, has_unhoused = false;
    for (const auto& an : anomalies) {
      if (an.display == 'b' && an.note.find("A_{01}{32}") != std::string::npos)
        has_b_token = true;
      if (an.display == 'c' && an.note.find("A_{02}{31}") != std::string::npos)
        has_c_token = true;
      if (an.display == 'd' && an.note.find("no coefficient") != std::string::npos)
        has_unhoused = true;
    }
    CHECK(has_b_token);
    CHECK(has_c_token);
    CHECK(has_unhoused);
  }
}

TEST_CASE("float backend report agrees with the exact one on counts") {
  SplitMix64 rng{505};
  MV psi = random_multivector<X>(rng);
  FormX a = sample_deformation();

  Multivector<Complex64> psi_f;
  for (unsigned m = 0; m < kBladeCount; ++m)
    psi_f[m] = Complex64{psi[m].re.get_d(), psi[m].im.get_d()};
  BilinearForm<double> a_f;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a_f.at(i, j) = a(i, j).get_d();

  auto exact_report = compare_printed_terms(psi, a);
  auto float_report = compare_printed_terms(psi_f, a_f, 1e-9);
  CHECK(exact_report.per_display == float_report.per_display);
}
