#pragma once

#include <stdexcept>
#include <string>

namespace qcliff {

struct QcliffError : std::runtime_error {
  explicit QcliffError(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the accepted domain (malformed file, non-antisymmetric
// deformation matrix, non-finite values).
struct InputError : QcliffError {
  explicit InputError(const std::string& what) : QcliffError(what) {}
};

// Element does not lie in the required minimal left ideal.
struct NotInIdealError : QcliffError {
  explicit NotInIdealError(const std::string& what) : QcliffError(what) {}
};

// Covariant zero-pattern matches no class.
struct UnclassifiableError : QcliffError {
  explicit UnclassifiableError(const std::string& what) : QcliffError(what) {}
};

// An iterative procedure (series evaluation, root search) failed to reach
// its target accuracy within the allowed number of steps.
struct ConvergenceError : QcliffError {
  explicit ConvergenceError(const std::string& what) : QcliffError(what) {}
};

// A (classical, deformed) class pair landed outside the admissible
// correspondence table. Carries both labels and the fired conditions.
struct DualityViolationError : QcliffError {
  explicit DualityViolationError(const std::string& what) : QcliffError(what) {}
};

}  // namespace qcliff
