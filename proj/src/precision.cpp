#include "cantorfour/precision.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

#include "cantorfour/errors.hpp"
#include "cantorfour/rational.hpp"

namespace cantorfour {

mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::Down: return MPFR_RNDD;
    case Round::Up: return MPFR_RNDU;
    default: return MPFR_RNDN;
  }
}

namespace {

int read_guard_bits_env() {
  const char* s = std::getenv("CANTORFOUR_GUARD_BITS");
  if (!s || !*s) return 0;
  int n = std::atoi(s);
  if (n <= 0) return 0;
  return n < 30 ? 30 : n;  // below 30 guard bits the reduction loses its point
}

int g_guard_bits = read_guard_bits_env();

mpfr_prec_t working_prec() {
  mpfr_prec_t p = 53 + g_guard_bits;
  return p < 128 ? 128 : p;
}

// ---- double-double kernel -------------------------------------------------
//
// Valid only for the tiny argument range produced by the octant fold below
// (|x| <= pi/4), which is why it can stay this small.

struct DD {
  double hi, lo;
};

inline DD dd_two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD dd_quick_sum(double a, double b) {  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD dd_add(DD a, DD b) {
  DD s = dd_two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return dd_quick_sum(s.hi, s.lo);
}

inline DD dd_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_mul(DD a, DD b) {
  DD p = dd_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_quick_sum(p.hi, p.lo);
}

// pi to ~107 bits.
const DD kPi = {3.141592653589793116, 1.2246467991473531772e-16};

// 1/(2k)! and 1/(2k+1)! as double-double, generated once via MPFR so nobody
// has to proofread 30 hand-typed constants.
struct TaylorTables {
  static constexpr int kTerms = 13;
  DD inv_even[kTerms];  // 1/(0)!, 1/2!, 1/4!, ...
  DD inv_odd[kTerms];   // 1/1!, 1/3!, 1/5!, ...
  TaylorTables() {
    mpz_class f = 1;
    for (int k = 0, n = 0; k < kTerms; ++k) {
      // n! incrementally; even slot uses (2k)!, odd slot (2k+1)!.
      while (n < 2 * k) f *= ++n;
      inv_even[k] = inv_of(f);
      while (n < 2 * k + 1) f *= ++n;
      inv_odd[k] = inv_of(f);
    }
  }
  static DD inv_of(const mpz_class& f) {
    mpfr_t x;
    mpfr_init2(x, 160);
    mpfr_set_z(x, f.get_mpz_t(), MPFR_RNDN);
    mpfr_ui_div(x, 1, x, MPFR_RNDN);
    double hi = mpfr_get_d(x, MPFR_RNDN);
    mpfr_sub_d(x, x, hi, MPFR_RNDN);
    double lo = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return {hi, lo};
  }
};

const TaylorTables kTables;

// sin and cos of theta = pi*f for exact rational f in [0, 1/4].
void dd_sincos_quarter(const mpq_class& f, DD& c_out, DD& s_out) {
  // f as double-double: hi truncated, lo the exact remainder rounded.
  double fh = mpq_get_d(f.get_mpq_t());
  mpq_class rem = f - mpq_class(fh);
  double fl = mpq_get_d(rem.get_mpq_t());
  DD theta = dd_mul({fh, fl}, kPi);
  DD x = dd_mul(theta, theta);  // <= (pi/4)^2

  DD s = kTables.inv_odd[TaylorTables::kTerms - 1];
  DD c = kTables.inv_even[TaylorTables::kTerms - 1];
  for (int k = TaylorTables::kTerms - 2; k >= 0; --k) {
    // alternating series: 1/(2k+1)! - x * s, likewise for cos
    s = dd_add(kTables.inv_odd[k], dd_mul({-x.hi, -x.lo}, s));
    c = dd_add(kTables.inv_even[k], dd_mul({-x.hi, -x.lo}, c));
  }
  s_out = dd_mul(theta, s);
  c_out = c;
}

struct CS {
  long double c, s;
};

// Core evaluation of (cos pi t, sin pi t): exact octant fold, then either
// the double-double kernel or MPFR depending on guard_bits().
CS eval_cis(const mpq_class& t) {
  mpq_class r = mod2(t);  // [0, 2)

  if (g_guard_bits > 0) {
    mpfr_t a, s, c;
    mpfr_inits2(working_prec(), a, s, c, (mpfr_ptr)nullptr);
    mpfr_const_pi(a, MPFR_RNDN);
    mpfr_mul_q(a, a, r.get_mpq_t(), MPFR_RNDN);
    mpfr_sin_cos(s, c, a, MPFR_RNDN);
    CS out{mpfr_get_ld(c, MPFR_RNDN), mpfr_get_ld(s, MPFR_RNDN)};
    mpfr_clears(a, s, c, (mpfr_ptr)nullptr);
    return out;
  }

  // quadrant q = floor(2r), fractional part f = r - q/2 in [0, 1/2)
  mpz_srcptr num = mpq_numref(r.get_mpq_t());
  mpz_srcptr den = mpq_denref(r.get_mpq_t());
  mpz_class num2, q2, fn;
  mpz_mul_2exp(num2.get_mpz_t(), num, 1);
  mpz_fdiv_qr(q2.get_mpz_t(), fn.get_mpz_t(), num2.get_mpz_t(), den);
  unsigned long q = q2.get_ui();  // 0..3
  mpq_class f(fn, 2 * mpz_class(den));
  f.canonicalize();

  DD c, s;
  if (sgn(f) == 0) {
    c = {1.0, 0.0};
    s = {0.0, 0.0};
  } else if (f > mpq_class(1, 4)) {
    dd_sincos_quarter(mpq_class(1, 2) - f, s, c);  // swapped on purpose
  } else {
    dd_sincos_quarter(f, c, s);
  }

  long double lc = (long double)c.hi + (long double)c.lo;
  long double ls = (long double)s.hi + (long double)s.lo;
  switch (q) {
    case 0: return {lc, ls};
    case 1: return {-ls, lc};
    case 2: return {-lc, -ls};
    default: return {ls, -lc};
  }
}

}  // namespace

int guard_bits() { return g_guard_bits; }

void set_guard_bits(int n) { g_guard_bits = n <= 0 ? 0 : (n < 30 ? 30 : n); }

std::complex<double> cis_pi(const mpq_class& t) {
  CS cs = eval_cis(t);
  return {(double)cs.c, (double)cs.s};
}

void cis_pi_ext(const mpq_class& t, long double& cos_out, long double& sin_out) {
  CS cs = eval_cis(t);
  cos_out = cs.c;
  sin_out = cs.s;
}

double sin_pi(const mpq_class& t) { return (double)eval_cis(t).s; }

double cos_pi(const mpq_class& t) { return (double)eval_cis(t).c; }

long double to_long_double(const mpq_class& q) {
  double hi = mpq_get_d(q.get_mpq_t());
  mpq_class rem = q - mpq_class(hi);
  double lo = mpq_get_d(rem.get_mpq_t());
  return (long double)hi + (long double)lo;
}

// ---- BigReal --------------------------------------------------------------

BigReal::BigReal(mpfr_prec_t prec) {
  mpfr_init2(v_, prec > 0 ? prec : working_prec());
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

void BigReal::set(const mpq_class& q, Round r) {
  mpfr_set_q(v_, q.get_mpq_t(), to_mpfr(r));
}
void BigReal::set(const mpz_class& z, Round r) {
  mpfr_set_z(v_, z.get_mpz_t(), to_mpfr(r));
}
void BigReal::set_pi(Round r) { mpfr_const_pi(v_, to_mpfr(r)); }
void BigReal::mul(const BigReal& o, Round r) {
  mpfr_mul(v_, v_, o.v_, to_mpfr(r));
}
void BigReal::mul_q(const mpq_class& q, Round r) {
  mpfr_mul_q(v_, v_, q.get_mpq_t(), to_mpfr(r));
}
void BigReal::div(const BigReal& o, Round r) {
  mpfr_div(v_, v_, o.v_, to_mpfr(r));
}
void BigReal::rootn(unsigned long n, Round r) {
  mpfr_rootn_ui(v_, v_, n, to_mpfr(r));
}
void BigReal::pow_ui(unsigned long e, Round r) {
  mpfr_pow_ui(v_, v_, e, to_mpfr(r));
}
void BigReal::inv(Round r) { mpfr_ui_div(v_, 1, v_, to_mpfr(r)); }
double BigReal::get(Round r) const { return mpfr_get_d(v_, to_mpfr(r)); }

// ---- directed helpers -----------------------------------------------------

namespace {
Round flip(Round r) {
  if (r == Round::Down) return Round::Up;
  if (r == Round::Up) return Round::Down;
  return r;
}
}  // namespace

double pow_mpq(const mpq_class& base, const mpq_class& exp, Round r) {
  if (sgn(base) <= 0) throw std::domain_error("pow_mpq: base must be positive");
  if (sgn(exp) == 0) return 1.0;

  mpz_class p(mpq_numref(exp.get_mpq_t()));
  mpz_class qz(mpq_denref(exp.get_mpq_t()));
  if (!qz.fits_ulong_p()) throw std::domain_error("pow_mpq: exponent too large");
  unsigned long q = qz.get_ui();
  bool invert = sgn(p) < 0;
  mpz_class ap = abs(p);
  if (!ap.fits_ulong_p()) throw std::domain_error("pow_mpq: exponent too large");

  mpq_class t;
  mpz_pow_ui(mpq_numref(t.get_mpq_t()), mpq_numref(base.get_mpq_t()), ap.get_ui());
  mpz_pow_ui(mpq_denref(t.get_mpq_t()), mpq_denref(base.get_mpq_t()), ap.get_ui());
  t.canonicalize();

  Round inner = invert ? flip(r) : r;
  BigReal x;
  x.set(t, inner);
  x.rootn(q, inner);
  if (invert) x.inv(r);
  return x.get(r);
}

double chord_upper(const mpq_class& d) {
  mpq_class a = abs(d);
  if (a > 1) return 2.0;
  // 2 sin(pi a / 2): the argument lies in [0, pi/2] where sin is increasing,
  // so rounding the argument and the sine both upward gives a true bound.
  mpfr_t arg, s;
  mpfr_inits2(working_prec(), arg, s, (mpfr_ptr)nullptr);
  mpfr_const_pi(arg, MPFR_RNDU);
  mpfr_mul_q(arg, arg, mpq_class(a / 2).get_mpq_t(), MPFR_RNDU);
  mpfr_sin(s, arg, MPFR_RNDU);
  mpfr_mul_ui(s, s, 2, MPFR_RNDU);
  double out = mpfr_get_d(s, MPFR_RNDU);
  mpfr_clears(arg, s, (mpfr_ptr)nullptr);
  return out;
}

double perturbation_bound(const mpq_class& scale, const mpz_class& freq,
                          const mpq_class& delta, Round r) {
  if (freq < 1) throw std::domain_error("perturbation_bound: freq must be >= 1");
  BigReal num;
  num.set_pi(r);
  num.mul_q(scale, r);
  // freq^delta rounded the other way
  const mpz_class& p = delta.get_num();
  unsigned long q = delta.get_den().get_ui();
  if (!p.fits_ulong_p()) throw std::domain_error("perturbation_bound: delta");
  BigReal den;
  den.set(freq, flip(r));
  den.pow_ui(p.get_ui(), flip(r));
  den.rootn(q, flip(r));
  num.div(den, r);
  return num.get(r);
}

}  // namespace cantorfour
