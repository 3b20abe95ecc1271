// Acceptance harness: runs each property family once, timed against its
// budget, and prints one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails its checks or its budget.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "qcliff/verify.hpp"

namespace {

struct Criterion {
  int number;
  std::string suite;
  std::int64_t budget_ms;
};

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  const std::vector<Criterion> criteria = {
      {1, "algebra-laws", 10000},  {2, "deformation-maps", 5000},
      {3, "grading", 5000},        {4, "idempotents", 10000},
      {5, "fierz", 20000},         {6, "representations", 10000},
      {7, "classifier", 20000},    {8, "duality", 60000},
      {9, "appendix-diff", 30000},
  };

  qcliff::VerifyOptions opts;
  opts.seed = 42;
  opts.tol = 1e-9;

  bool all_ok = true;
  for (const auto& crit : criteria) {
    auto t0 = clock::now();
    qcliff::SuiteResult res;
    try {
      res = qcliff::run_verify_suite(crit.suite, opts);
    } catch (const std::exception& e) {
      res.name = crit.suite;
      res.passed = false;
      res.failures.push_back(std::string("unexpected exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();

    bool in_budget = ms < crit.budget_ms;
    bool ok = res.passed && in_budget;
    all_ok = all_ok && ok;

    std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << crit.number << " " << crit.suite
              << " (" << ms << " ms " << (in_budget ? "<" : ">=") << " " << crit.budget_ms
              << " ms)" << std::endl;
    if (!res.passed)
      for (const auto& f : res.failures) std::cout << "    " << f << std::endl;
  }
  return all_ok ? 0 : 1;
}
