#ifndef CANTORFOUR_RATIONAL_HPP
#define CANTORFOUR_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <string>

// Exact arithmetic on the circle of circumference 2, modelled as (-1, 1]
// with endpoints identified.  Everything here is integer/rational and
// exact; floating point appears only in unit_exponential's result.

namespace cantorfour {

using Rational = mpq_class;
using BigInt = mpz_class;
using Frequency = mpz_class;

// x mod 2, exact, in [0, 2).
Rational mod2(const Rational& x);

// A point of the circle, stored as its canonical representative in (-1, 1].
class CirclePoint {
 public:
  CirclePoint() : v_(0) {}
  // Reduces an arbitrary rational mod 2 into (-1, 1].
  explicit CirclePoint(const Rational& x);

  const Rational& value() const { return v_; }

  friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const CirclePoint& a, const CirclePoint& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const CirclePoint& a, const CirclePoint& b) {
    return a.v_ < b.v_;
  }

 private:
  Rational v_;
};

// Exactly reduced phase of e^{i pi n x}: (n*x) mod 2, in [0, 2).
struct Phase {
  Rational reduced;

  // pi * reduced, for callers that want the raw angle.
  long double angle() const;
};

Phase reduce_phase(const Frequency& n, const CirclePoint& x);
// Overload for lifted (not yet canonicalised) rational coordinates; the
// result is the same since reduction is mod 2 anyway.
Phase reduce_phase(const Frequency& n, const Rational& x);

// e^{i pi * reduced}; the transcendental step runs at extended precision
// (see precision.hpp), so the result is a correctly rounded double pair.
std::complex<double> unit_exponential(const Phase& p);

// Exact distance from x to the grid (2/N)Z in the circle metric, in [0, 1/N].
Rational circle_distance(const CirclePoint& x, const BigInt& N);

// Exact distance between two circle points (circle metric, in [0, 1]).
Rational circle_gap(const CirclePoint& a, const CirclePoint& b);

// Parses "p/q" or "p" (decimal); throws ConfigError on junk or q = 0.
Rational parse_rational(const std::string& s);

}  // namespace cantorfour

#endif
