#include "cantorfour/fourier.hpp"

#include <mpfr.h>

#include <array>
#include <cmath>
#include <cstdlib>

#include "cantorfour/errors.hpp"
#include "cantorfour/precision.hpp"

namespace cantorfour {

double sinc_pi(const Rational& u) {
    if (sgn(u) == 0) return 1.0;
    Rational a = abs(u);
    // Below 2^-40 the quadratic correction is under 1e-24; returning 1 keeps
    // the value free of spurious rounding from the division.
    if (a < Rational(1, Frequency(1) << 40)) return 1.0;
    double s = sin_pi(a);
    double t = 3.141592653589793238 * mpq_get_d(a.get_mpq_t());
    return s / t;
}

namespace {

// sinc to long-double accuracy: sin through exact reduction, magnitude from
// the unreduced value (it is the true divisor, not a phase).
long double sinc_pi_ext(const Rational& u) {
    if (sgn(u) == 0) return 1.0L;
    Rational a = abs(u);
    if (a < Rational(1, Frequency(1) << 40)) return 1.0L;
    long double c, s;
    cis_pi_ext(a, c, s);
    long double t = 3.14159265358979323846L * to_long_double(a);
    return s / t;
}

std::complex<long double> part_contribution(const UniformPart& p, const Frequency& n) {
    Phase ph = reduce_phase(n, p.interval.center);
    long double c, s;
    cis_pi_ext(ph.reduced, c, s);
    Rational u = Rational(n) * p.interval.half_length;
    long double amp = to_long_double(p.weight) * 0.5L * sinc_pi_ext(u);
    return {amp * c, amp * s};
}

std::complex<long double> atom_contribution(const Atom& a, const Frequency& n) {
    Phase ph = reduce_phase(n, a.point);
    long double c, s;
    cis_pi_ext(ph.reduced, c, s);
    long double amp = to_long_double(a.mass) * 0.5L;
    return {amp * c, amp * s};
}

}  // namespace

FourierCoefficient coefficient(const Measure& mu, const Frequency& n) {
    std::complex<long double> acc{0.0L, 0.0L};
    for (const UniformPart& p : mu.uniform_parts()) {
        acc += part_contribution(p, n);
    }
    for (const Atom& a : mu.atoms()) {
        acc += atom_contribution(a, n);
    }
    return {{double(acc.real()), double(acc.imag())}, n};
}

std::vector<FourierCoefficient> coefficients_batch_serial(const Measure& mu,
                                                          const std::vector<Frequency>& ns) {
    std::vector<FourierCoefficient> out(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        out[i] = coefficient(mu, ns[i]);
    }
    return out;
}

std::vector<FourierCoefficient> coefficients_batch(const Measure& mu,
                                                   const std::vector<Frequency>& ns) {
    std::vector<FourierCoefficient> out(ns.size());
    const long total = long(ns.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < total; ++i) {
        out[std::size_t(i)] = coefficient(mu, ns[std::size_t(i)]);
    }
    return out;
}

namespace {

constexpr int kGL = 16;

struct GLRule {
    std::array<long double, kGL> node;
    std::array<long double, kGL> weight;
};

// Legendre-16 nodes by Newton iteration on P_16; classic three-term
// recurrence for values and the standard derivative identity.
GLRule make_gl_rule() {
    GLRule r;
    const long double pi = 3.14159265358979323846L;
    for (int k = 0; k < kGL; ++k) {
        long double x = std::cos(pi * (k + 0.75L) / (kGL + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int j = 2; j <= kGL; ++j) {
                long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = kGL * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-21L) break;
        }
        r.node[std::size_t(k)] = x;
        r.weight[std::size_t(k)] = 2.0L / ((1 - x * x) * dp * dp);
    }
    return r;
}

const GLRule& gl_rule() {
    static const GLRule r = make_gl_rule();
    return r;
}

// e^{i pi t} for a rational t of arbitrary size, through mpfr's own argument
// reduction at 256 bits.  Deliberately avoids reduce_phase so the quadrature
// path shares no trigonometric machinery with the closed form.
std::complex<long double> big_cis(const Rational& t) {
    mpfr_t a, s, c;
    mpfr_inits2(256, a, s, c, (mpfr_ptr)0);
    mpfr_const_pi(a, MPFR_RNDN);
    mpfr_mul_q(a, a, t.get_mpq_t(), MPFR_RNDN);
    mpfr_sin_cos(s, c, a, MPFR_RNDN);
    std::complex<long double> z{mpfr_get_ld(c, MPFR_RNDN), mpfr_get_ld(s, MPFR_RNDN)};
    mpfr_clears(a, s, c, (mpfr_ptr)0);
    return z;
}

// (1/2) * integral over [a,b] of density * e^{i pi n x} dx with P panels.
std::complex<long double> segment_quadrature(const Rational& a, const Rational& b,
                                             long double density, const Frequency& n,
                                             long P) {
    const GLRule& gl = gl_rule();
    Rational dx = (b - a) / P;
    Rational half_dx = dx / 2;
    // Inner sum over nodes is panel-independent.
    Rational eta_q = Rational(n) * half_dx;  // phase scale, |pi*eta| <= ~4
    long double eta = to_long_double(eta_q);
    const long double pi = 3.14159265358979323846L;
    std::complex<long double> inner{0.0L, 0.0L};
    for (int i = 0; i < kGL; ++i) {
        long double th = pi * eta * gl.node[std::size_t(i)];
        inner += gl.weight[std::size_t(i)] * std::complex<long double>{std::cos(th), std::sin(th)};
    }
    // Midpoint phasor advances by a fixed factor per panel; re-anchor through
    // mpfr periodically so multiplicative drift stays below 1e-17.
    std::complex<long double> step = big_cis(Rational(n) * dx);
    std::complex<long double> acc{0.0L, 0.0L};
    std::complex<long double> r{0.0L, 0.0L};
    const long resync = 256;
    for (long j = 0; j < P; ++j) {
        if (j % resync == 0) {
            Rational mid = a + dx * j + half_dx;
            r = big_cis(Rational(n) * mid);
        }
        acc += r;
        r *= step;
    }
    long double scale = 0.5L * density * to_long_double(half_dx);
    return scale * inner * acc;
}

}  // namespace

std::complex<double> coefficient_oracle(const Measure& mu, const Frequency& n, double tol) {
    const long kPanelBudget = 1L << 22;
    std::complex<long double> total{0.0L, 0.0L};

    std::size_t pieces = 0;
    for (const UniformPart& p : mu.uniform_parts()) pieces += to_segments(p.interval).size();
    long double seg_tol = pieces ? (long double)tol / (2.0L * pieces) : (long double)tol;

    for (const UniformPart& p : mu.uniform_parts()) {
        long double density = to_long_double(p.weight / p.interval.length());
        for (const Segment& s : to_segments(p.interval)) {
            if (s.lo == s.hi) continue;
            // Panels sized so each spans at most ~4 radians of phase.
            Rational span = abs(Rational(n)) * (s.hi - s.lo);
            Rational pcount = span;  // pi*span/P <= 4  when  P >= span
            long P = 1;
            if (sgn(pcount) > 0) {
                mpz_class c = pcount.get_num() / pcount.get_den() + 1;
                if (c > kPanelBudget) throw OracleInfeasible("frequency too large for oracle");
                P = std::max(1L, c.get_si());
            }
            std::complex<long double> coarse = segment_quadrature(s.lo, s.hi, density, n, P);
            for (;;) {
                if (2 * P > kPanelBudget) throw OracleInfeasible("frequency too large for oracle");
                std::complex<long double> fine = segment_quadrature(s.lo, s.hi, density, n, 2 * P);
                if (std::abs(fine - coarse) <= seg_tol) {
                    total += fine;
                    break;
                }
                coarse = fine;
                P *= 2;
            }
        }
    }
    for (const Atom& a : mu.atoms()) {
        std::complex<long double> z = big_cis(Rational(n) * a.point.value());
        total += 0.5L * to_long_double(a.mass) * z;
    }
    return {double(total.real()), double(total.imag())};
}

}  // namespace cantorfour
