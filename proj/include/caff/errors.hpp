#ifndef CAFF_ERRORS_HPP
#define CAFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace caff {

// Base class for all library errors so callers can catch caff::Error
// and map it to a diagnostic exit path.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Division by a jet whose constant term vanishes.
struct SingularJetError : Error {
  using Error::Error;
};

// sqrt/ln/pow applied outside their domain at the expansion point.
struct JetDomainError : Error {
  using Error::Error;
};

// Linear system whose constant-term matrix is (numerically) singular.
struct SingularSystemError : Error {
  using Error::Error;
};

// Surface-file syntax problems, with 1-based source location.
struct ParseError : Error {
  ParseError(std::string msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

// Expression evaluation hit a domain error; `subexpr` prints the
// offending subtree.
struct EvalDomainError : Error {
  EvalDomainError(const std::string& msg, std::string subexpr_)
      : Error(msg + " in subexpression: " + subexpr_),
        subexpr(std::move(subexpr_)) {}
  std::string subexpr;
};

// Position vector tangent to the hypersurface: no centroaffine structure.
struct NotCentroaffineError : Error {
  using Error::Error;
};

// The Gauss-split coefficient matrix is indefinite or singular, so the
// hypersurface is not locally strongly convex at the point.
struct NotConvexError : Error {
  using Error::Error;
};

// Point outside the chart's domain guard.
struct DomainGuardError : Error {
  using Error::Error;
};

// Cubic-form maximization failed to converge from every start.
struct OptimizerError : Error {
  using Error::Error;
};

// No catalog entry or surface file with the requested name.
struct UnknownSurfaceError : Error {
  using Error::Error;
};

// A sample request produced no usable points.
struct EmptySampleError : Error {
  using Error::Error;
};

}  // namespace caff

#endif  // CAFF_ERRORS_HPP
