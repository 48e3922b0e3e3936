#include "cantorfour/rational.hpp"

#include <cctype>

#include "cantorfour/errors.hpp"
#include "cantorfour/precision.hpp"

namespace cantorfour {

Rational mod2(const Rational& x) {
  // (num mod 2*den) / den, with a nonnegative remainder.
  mpz_srcptr den = mpq_denref(x.get_mpq_t());
  mpz_class mod, r;
  mpz_mul_2exp(mod.get_mpz_t(), den, 1);
  mpz_fdiv_r(r.get_mpz_t(), mpq_numref(x.get_mpq_t()), mod.get_mpz_t());
  Rational out(r, mpz_class(den));
  out.canonicalize();
  return out;
}

CirclePoint::CirclePoint(const Rational& x) : v_(mod2(x)) {
  if (v_ > 1) v_ -= 2;  // [0,2) -> (-1,1]
}

long double Phase::angle() const {
  // pi * reduced; reduced < 2, so a plain long double product is accurate
  // to ~2^-62 absolute, plenty for a display/plumbing angle.
  return 3.14159265358979323851L * (long double)mpq_get_d(reduced.get_mpq_t());
}

Phase reduce_phase(const Frequency& n, const Rational& x) {
  mpz_srcptr den = mpq_denref(x.get_mpq_t());
  mpz_class prod, mod, r;
  mpz_mul(prod.get_mpz_t(), n.get_mpz_t(), mpq_numref(x.get_mpq_t()));
  mpz_mul_2exp(mod.get_mpz_t(), den, 1);
  mpz_fdiv_r(r.get_mpz_t(), prod.get_mpz_t(), mod.get_mpz_t());
  Rational red(r, mpz_class(den));
  red.canonicalize();
  return Phase{red};
}

Phase reduce_phase(const Frequency& n, const CirclePoint& x) {
  return reduce_phase(n, x.value());
}

std::complex<double> unit_exponential(const Phase& p) {
  return cis_pi(p.reduced);
}

Rational circle_distance(const CirclePoint& x, const BigInt& N) {
  // u = (N*x) mod 2 in [0,2); the distance to the grid (2/N)Z is
  // min(u, 2-u)/N.
  Rational u = reduce_phase(N, x).reduced;
  Rational d = (u > 1) ? Rational(2 - u) : u;
  d /= N;
  return d;
}

Rational circle_gap(const CirclePoint& a, const CirclePoint& b) {
  Rational d = mod2(a.value() - b.value());
  return (d > 1) ? Rational(2 - d) : d;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ConfigError("empty rational literal");
  // mpq_class's own parser accepts "p/q", but silently tolerates some junk
  // (and a zero denominator), so validate the shape first.
  auto ok_part = [](const std::string& part, bool sign_ok) {
    if (part.empty()) return false;
    size_t i = 0;
    if (sign_ok && (part[0] == '+' || part[0] == '-')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit((unsigned char)part[i])) return false;
    return true;
  };
  std::string num = s, den;
  if (auto pos = s.find('/'); pos != std::string::npos) {
    num = s.substr(0, pos);
    den = s.substr(pos + 1);
    if (!ok_part(den, false)) throw ConfigError("bad rational literal: " + s);
  }
  if (!ok_part(num, true)) throw ConfigError("bad rational literal: " + s);
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw ConfigError("bad rational literal: " + s);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw ConfigError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace cantorfour
