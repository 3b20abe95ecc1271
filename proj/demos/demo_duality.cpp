// Tabulates how plain labels map to deformed labels over random samples,
// then constructs a boundary point where both deformed scalars vanish.

#include <iostream>

#include "qcliff/io.hpp"
#include "qcliff/quantum.hpp"
#include "qcliff/random.hpp"

using namespace qcliff;

int main() {
  const std::uint64_t samples = 2000;
  const double magnitude = 0.5;
  const std::uint64_t seed = 2024;
  const double tol = 1e-9;

  std::cout << "label correspondence over " << samples << " random spinors, deformation size "
            << magnitude << ":\n\n";
  ScanResult scan = duality_table_scan(samples, magnitude, seed, tol);
  std::cout << scan_to_csv(scan) << "\n";

  // Drive the lower components of a dense spinor until both deformed
  // scalars vanish; the result lands on a class boundary.
  SplitMix64 rng(seed);
  BilinearForm<double> a = random_antisymmetric<double>(rng, magnitude);
  Column<Complex64> start = {Complex64(1, 0), Complex64(0.5, 0), Complex64(0.1, 1),
                             Complex64(0, -0.3)};
  Column<Complex64> solved = solve_singular_b(start, a);

  auto qc = compute_b_covariants(solved, a);
  std::cout << "constructed boundary point:\n";
  std::cout << "  deformed sigma = " << qc.b.sigma << "\n";
  std::cout << "  deformed omega = " << qc.b.omega << "\n";
  std::cout << "  plain class    = " << classify(qc.classical, tol) << "\n";

  auto rec = duality_record(solved, a, tol);
  std::cout << "  record: " << duality_record_to_json(rec).dump(2) << "\n";
  return 0;
}
