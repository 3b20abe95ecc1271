// Classifies a small gallery of spinors exactly and prints the channel
// values next to the resulting label.

#include <iostream>
#include <string>
#include <vector>

#include "qcliff/covariants.hpp"
#include "qcliff/io.hpp"

using namespace qcliff;

int main() {
  using X = ExactComplex;
  using traits = scalar_traits<X>;

  std::vector<std::pair<std::string, Column<X>>> gallery = {
      {"dense regular", {X{1, 0}, X{mpq_class(1, 2), 0}, X{0, 1}, X{0, 0}}},
      {"scalar only", {X{1, 0}, X{0, 0}, X{0, 0}, X{0, 0}}},
      {"pseudoscalar only", {X{1, 0}, X{0, 0}, X{0, 1}, X{0, 0}}},
      {"flag-dipole", {X{1, 0}, X{1, 1}, X{-1, 0}, X{1, 1}}},
      {"flagpole", {X{1, 0}, X{0, 0}, X{0, 0}, X{1, 0}}},
      {"dipole", {X{1, 0}, X{0, 0}, X{1, 0}, X{0, 0}}},
  };

  for (const auto& [name, c] : gallery) {
    auto cov = compute_covariants(c);
    int label = classify(cov, 1e-12);
    std::cout << name << "\n  class " << label;
    std::cout << "  sigma=" << traits::real_str(cov.sigma)
              << "  omega=" << traits::real_str(cov.omega) << "\n  J=(";
    for (int mu = 0; mu < 4; ++mu)
      std::cout << (mu ? ", " : "") << traits::real_str(cov.j[mu]);
    std::cout << ")  K=(";
    for (int mu = 0; mu < 4; ++mu)
      std::cout << (mu ? ", " : "") << traits::real_str(cov.k[mu]);
    std::cout << ")\n";

    auto fierz = fierz_residuals(cov);
    std::cout << "  quadratic identity residuals exactly zero: "
              << (fierz.is_exactly_zero() ? "yes" : "no") << "\n";
    std::cout << "  report:\n" << classification_record(cov, fierz, label).dump(4) << "\n\n";
  }
  return 0;
}
