#ifndef CANTORFOUR_PRECISION_HPP
#define CANTORFOUR_PRECISION_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>

// Extended-precision evaluation of e^{i pi t} for *exact rational* t, plus
// directed-rounding helpers used wherever a bound must err on the safe side.
//
// Because phases are reduced exactly in rational arithmetic before any
// floating-point enters, no heroic argument reduction is needed here: the
// transcendental step only ever sees an argument in [0, pi/4].  The default
// path evaluates it in double-double arithmetic (~106-bit, i.e. 53 guard
// bits past double).  Setting the environment variable CANTORFOUR_GUARD_BITS
// switches to MPFR at 53+n bits instead (n >= 30 enforced); that path is
// also the oracle the double-double path is tested against.

namespace cantorfour {

enum class Round { Down, Nearest, Up };

mpfr_rnd_t to_mpfr(Round r);

// Guard bits carried past double precision by cis_pi/sin_pi.  0 means the
// built-in double-double path (53 guard bits); a positive value selects the
// MPFR path at 53+n bits.  Initialised once from CANTORFOUR_GUARD_BITS.
int guard_bits();
void set_guard_bits(int n);

// e^{i pi t}; t is reduced mod 2 exactly before evaluation.
std::complex<double> cis_pi(const mpq_class& t);
void cis_pi_ext(const mpq_class& t, long double& cos_out, long double& sin_out);
double sin_pi(const mpq_class& t);
double cos_pi(const mpq_class& t);

// Round-to-nearest long double from a rational, via a two-step conversion
// that keeps ~106 significant bits before the final cast.
long double to_long_double(const mpq_class& q);

// base^exp with directed rounding; base > 0, exp an arbitrary rational.
double pow_mpq(const mpq_class& base, const mpq_class& exp, Round r);

// Upper bound on |e^{i pi d} - 1| = 2 sin(pi |d| / 2) for |d| <= 1.
double chord_upper(const mpq_class& d);

// scale * pi / freq^delta with directed rounding (freq >= 1, delta > 0).
double perturbation_bound(const mpq_class& scale, const mpz_class& freq,
                          const mpq_class& delta, Round r);

// Small RAII wrapper over mpfr_t for composing directed-rounding chains.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 0);  // 0 -> working precision
  BigReal(const BigReal& o);
  BigReal& operator=(const BigReal& o);
  ~BigReal();

  void set(const mpq_class& q, Round r);
  void set(const mpz_class& z, Round r);
  void set_pi(Round r);
  void mul(const BigReal& o, Round r);
  void mul_q(const mpq_class& q, Round r);
  void div(const BigReal& o, Round r);
  void rootn(unsigned long n, Round r);
  void pow_ui(unsigned long e, Round r);
  void inv(Round r);  // 1/x
  double get(Round r) const;

 private:
  mpfr_t v_;
};

}  // namespace cantorfour

#endif
