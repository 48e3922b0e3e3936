#ifndef CANTORFOUR_ERRORS_HPP
#define CANTORFOUR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cantorfour {

// Bad user input: malformed rationals, out-of-range parameters, unreadable
// files.  The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical guarantee that should hold failed to verify, or a
// construction ran out of admissible choices.  CLI exit code 1.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// The quadrature oracle cannot reach the requested accuracy within its
// panel budget (frequency too large for the oracle).
class OracleInfeasible : public std::runtime_error {
 public:
  explicit OracleInfeasible(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cantorfour

#endif
