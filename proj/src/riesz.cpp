#include "cantorfour/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cantorfour/errors.hpp"
#include "cantorfour/precision.hpp"

namespace cantorfour {

namespace {

void check_terms(const std::vector<Frequency>& terms) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
        if (sgn(terms[j]) <= 0) {
            throw std::invalid_argument("sequence terms must be positive");
        }
        if (j > 0 && terms[j] <= terms[j - 1]) {
            throw std::invalid_argument("sequence terms must be strictly increasing");
        }
    }
}

void check_depth(const LacunarySequence& seq, std::size_t depth) {
    if (depth > seq.size()) {
        throw std::invalid_argument("depth exceeds sequence length");
    }
}

}  // namespace

LacunarySequence::LacunarySequence(std::vector<Frequency> terms)
    : terms_(std::move(terms)), coeffs_(terms_.size(), Rational(1)) {
    check_terms(terms_);
}

LacunarySequence::LacunarySequence(std::vector<Frequency> terms, std::vector<Rational> coefficients)
    : terms_(std::move(terms)), coeffs_(std::move(coefficients)) {
    check_terms(terms_);
    if (coeffs_.size() != terms_.size()) {
        throw std::invalid_argument("one amplitude per term required");
    }
    for (const Rational& a : coeffs_) {
        if (abs(a) > 1) {
            throw std::invalid_argument("amplitudes must satisfy |a| <= 1");
        }
    }
}

std::vector<OmegaPoint> omega(const LacunarySequence& seq, std::size_t depth) {
    check_depth(seq, depth);
    std::size_t count = 1;
    for (std::size_t j = 0; j < depth; ++j) count *= 3;

    std::vector<OmegaPoint> out;
    out.reserve(count);
    std::vector<int> digits(depth, 0);  // 0,1,2 -> eps -1,0,+1
    for (std::size_t idx = 0; idx < count; ++idx) {
        OmegaPoint pt;
        pt.pattern.eps.resize(depth);
        pt.value = 0;
        for (std::size_t j = 0; j < depth; ++j) {
            int e = digits[j] - 1;
            pt.pattern.eps[j] = e;
            if (e > 0) pt.value += seq.terms()[j];
            if (e < 0) pt.value -= seq.terms()[j];
        }
        out.push_back(std::move(pt));
        for (std::size_t j = 0; j < depth; ++j) {  // ternary increment
            if (++digits[j] < 3) break;
            digits[j] = 0;
        }
    }
    std::sort(out.begin(), out.end(), [](const OmegaPoint& a, const OmegaPoint& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.pattern.eps < b.pattern.eps;
    });
    return out;
}

bool is_dissociate(const LacunarySequence& seq, std::size_t depth) {
    check_depth(seq, depth);
    if (depth < 2) return true;
    Frequency partial = 0;
    bool fast = true;
    for (std::size_t j = 0; j < depth; ++j) {
        if (j > 0 && seq.terms()[j] <= 2 * partial) {
            fast = false;
            break;
        }
        partial += seq.terms()[j];
    }
    if (fast) return true;
    auto pts = omega(seq, depth);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].value == pts[i - 1].value) return false;
    }
    return true;
}

namespace {

// Depth-first search for the (unique, by dissociateness) representation of
// target as a signed sum, largest term first, pruned by suffix sums.
bool find_representation(const std::vector<Frequency>& terms, std::size_t depth,
                         const Frequency& target, std::vector<int>& eps) {
    std::vector<Frequency> prefix_sum(depth + 1);  // sum of terms[0..j-1]
    prefix_sum[0] = 0;
    for (std::size_t j = 0; j < depth; ++j) prefix_sum[j + 1] = prefix_sum[j] + terms[j];

    struct Rec {
        const std::vector<Frequency>& terms;
        const std::vector<Frequency>& prefix;
        std::vector<int>& eps;
        bool run(std::size_t j, const Frequency& t) {
            if (abs(t) > prefix[j]) return false;  // unreachable
            if (j == 0) return sgn(t) == 0;
            for (int e : {-1, 0, 1}) {
                eps[j - 1] = e;
                if (run(j - 1, t - e * terms[j - 1])) return true;
            }
            eps[j - 1] = 0;
            return false;
        }
    } rec{terms, prefix_sum, eps};
    eps.assign(depth, 0);
    return rec.run(depth, target);
}

}  // namespace

Rational riesz_coefficient(const LacunarySequence& seq, const Frequency& n, std::size_t depth) {
    check_depth(seq, depth);
    if (!is_dissociate(seq, depth)) {
        throw std::invalid_argument("not dissociate");
    }
    std::vector<int> eps;
    if (!find_representation(seq.terms(), depth, n, eps)) {
        return Rational(0);
    }
    Rational v(1, 2);
    for (std::size_t j = 0; j < depth; ++j) {
        if (eps[j] != 0) v *= seq.coefficients()[j] / 2;
    }
    return v;
}

double partial_density(const LacunarySequence& seq, std::size_t depth, const CirclePoint& x) {
    check_depth(seq, depth);
    double v = 1.0;
    for (std::size_t j = 0; j < depth; ++j) {
        Phase ph = reduce_phase(seq.terms()[j], x);
        v *= 1.0 + mpq_get_d(seq.coefficients()[j].get_mpq_t()) * cos_pi(ph.reduced);
    }
    return v < 0 ? 0.0 : v;  // clip rounding residue; the product is >= 0
}

std::complex<double> riesz_density_quadrature(const LacunarySequence& seq, const Frequency& n,
                                              std::size_t depth) {
    check_depth(seq, depth);
    Frequency bandwidth = abs(n);
    for (std::size_t j = 0; j < depth; ++j) bandwidth += seq.terms()[j];
    if (bandwidth > (1 << 20)) {
        throw OracleInfeasible("frequency too large for oracle");
    }

    // Fixed composite Gauss-Legendre over [-1,1]; panels sized so the full
    // integrand (bandwidth b) swings at most ~pi radians per panel.  All
    // arithmetic is plain long double on purpose.
    long bw = std::max(1L, bandwidth.get_si());
    long panels = 4 * bw;
    const int kNodes = 12;
    static const long double xs[kNodes / 2] = {
        0.1252334085114689154724414L, 0.3678314989981801937526915L,
        0.5873179542866174472967024L, 0.7699026741943046870368938L,
        0.9041172563704748566784659L, 0.9815606342467192506905491L};
    static const long double ws[kNodes / 2] = {
        0.2491470458134027850005624L, 0.2334925365383548087608499L,
        0.2031674267230659217490645L, 0.1600783285433462263346525L,
        0.1069393259953184309602547L, 0.0471753363865118271946160L};
    const long double pi = 3.14159265358979323846L;
    long double nd = (long double)mpz_get_d(n.get_mpz_t());
    std::vector<long double> terms_ld(depth), amps_ld(depth);
    for (std::size_t j = 0; j < depth; ++j) {
        terms_ld[j] = (long double)mpz_get_d(seq.terms()[j].get_mpz_t());
        amps_ld[j] = to_long_double(seq.coefficients()[j]);
    }
    auto density = [&](long double x) {
        long double v = 1.0L;
        for (std::size_t j = 0; j < depth; ++j) {
            v *= 1.0L + amps_ld[j] * std::cos(pi * terms_ld[j] * x);
        }
        return v;
    };
    long double h = 2.0L / panels;
    std::complex<long double> acc{0.0L, 0.0L};
    for (long p = 0; p < panels; ++p) {
        long double mid = -1.0L + h * (p + 0.5L);
        for (int i = 0; i < kNodes / 2; ++i) {
            for (int sign = -1; sign <= 1; sign += 2) {
                long double x = mid + sign * (h / 2) * xs[i];
                long double th = pi * nd * x;
                acc += ws[i] * density(x) * std::complex<long double>{std::cos(th), std::sin(th)};
            }
        }
    }
    // nodes weighted for [-1,1] panels scaled by h/2; the measure is dx/2 and
    // the transform carries its own 1/2.
    acc *= (h / 2) * 0.5L * 0.5L;
    return {double(acc.real()), double(acc.imag())};
}

}  // namespace cantorfour
