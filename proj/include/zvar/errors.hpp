#pragma once

#include <stdexcept>
#include <string>

namespace zvar {

/// Double-integral (or contour) refinement exceeded its node budget
/// without meeting the convergence target.  CLI exit code 2.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Kernel gradient requested at a point where 1 + conj(z).w = 0.
class PoleError : public std::runtime_error {
 public:
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// Off-diagonal quantity requested on (or numerically at) the diagonal z = w.
class DiagonalEvaluationError : public std::runtime_error {
 public:
  explicit DiagonalEvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Derivative of the bipotential requested at its lambda = 0 singularity.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// Leading weighted coefficient vanished to working precision; the
/// polynomial effectively has a root at infinity.
class RootAtInfinityError : public std::runtime_error {
 public:
  explicit RootAtInfinityError(const std::string& what) : std::runtime_error(what) {}
};

/// A zero sits too close to the integration contour for the argument
/// principle count to converge within the node budget.
class NearBoundaryZeroError : public std::runtime_error {
 public:
  explicit NearBoundaryZeroError(const std::string& what) : std::runtime_error(what) {}
};

/// Resultant collapsed (common factor) or the Bezout count could not be
/// realized; the trial should be re-drawn.
class DegenerateSystemError : public std::runtime_error {
 public:
  explicit DegenerateSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Too many trials rejected; experiment aborted.  CLI exit code 3.
class SolverAbortError : public std::runtime_error {
 public:
  explicit SolverAbortError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zvar
