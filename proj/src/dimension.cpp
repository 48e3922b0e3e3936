#include "cantorfour/dimension.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>

#include "cantorfour/errors.hpp"
#include "cantorfour/precision.hpp"

namespace cantorfour {

namespace {

double q_to_d(const Rational& q, mpfr_rnd_t rnd) {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), rnd);
    double d = mpfr_get_d(x, rnd);
    mpfr_clear(x);
    return d;
}

double z_to_d(const BigInt& z, mpfr_rnd_t rnd) {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_z(x, z.get_mpz_t(), rnd);
    double d = mpfr_get_d(x, rnd);
    mpfr_clear(x);
    return d;
}

double mul_dir(double a, double b, mpfr_rnd_t rnd) {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_d(x, a, rnd);
    mpfr_mul_d(x, x, b, rnd);
    double d = mpfr_get_d(x, rnd);
    mpfr_clear(x);
    return d;
}

double div_dir(double a, double b, mpfr_rnd_t rnd) {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_d(x, a, rnd);
    mpfr_div_d(x, x, b, rnd);
    double d = mpfr_get_d(x, rnd);
    mpfr_clear(x);
    return d;
}

BigInt floor_q(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt ceil_q(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Window-mass evaluator over the support unrolled to [-1, 3]: every segment
// and atom appears once in [-1, 1] and once shifted by +2, so a window
// [t, t+l] with t in [-1, 1) and l < 2 sees exactly the circular mass.
// F(x) = sum of density * (x - pos)^+ deltas gives the cumulative uniform
// mass in O(log) per query via prefix sums over the sorted event list.
struct SupportScan {
    std::vector<Rational> pos;     // event positions, sorted
    std::vector<Rational> pre_d;   // prefix sums of density deltas
    std::vector<Rational> pre_dp;  // prefix sums of delta * position
    std::vector<Rational> apos;    // atom positions, sorted
    std::vector<Rational> apre;    // prefix atom masses
    Rational total;

    explicit SupportScan(const Measure& mu) {
        std::vector<std::pair<Rational, Rational>> events;
        for (const auto& part : mu.uniform_parts()) {
            Rational density = part.weight / part.interval.length();
            for (const Segment& seg : to_segments(part.interval)) {
                if (seg.lo == seg.hi) continue;
                for (int copy = 0; copy < 2; ++copy) {
                    Rational shift(2 * copy);
                    events.emplace_back(seg.lo + shift, density);
                    events.emplace_back(seg.hi + shift, -density);
                }
            }
        }
        std::sort(events.begin(), events.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        pos.reserve(events.size());
        pre_d.assign(1, Rational(0));
        pre_dp.assign(1, Rational(0));
        for (const auto& [p, d] : events) {
            pos.push_back(p);
            pre_d.push_back(pre_d.back() + d);
            pre_dp.push_back(pre_dp.back() + d * p);
        }
        std::vector<std::pair<Rational, Rational>> atom_events;
        for (const Atom& atom : mu.atoms()) {
            atom_events.emplace_back(atom.point.value(), atom.mass);
            atom_events.emplace_back(atom.point.value() + 2, atom.mass);
        }
        std::sort(atom_events.begin(), atom_events.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        apre.assign(1, Rational(0));
        for (const auto& [p, m] : atom_events) {
            apos.push_back(p);
            apre.push_back(apre.back() + m);
        }
        total = total_variation(mu);
    }

    Rational cumulative(const Rational& x) const {
        std::size_t i = std::upper_bound(pos.begin(), pos.end(), x) - pos.begin();
        return x * pre_d[i] - pre_dp[i];
    }

    // mu([t, t+len]) on the circle, closed window, len < 2.
    Rational window_mass(const Rational& t, const Rational& len) const {
        Rational u = t + len;
        Rational uniform = cumulative(u) - cumulative(t);
        std::size_t hi = std::upper_bound(apos.begin(), apos.end(), u) - apos.begin();
        std::size_t lo = std::lower_bound(apos.begin(), apos.end(), t) - apos.begin();
        return uniform + apre[hi] - apre[lo];
    }

    // Candidate left edges where mu([t, t+len]) can have a breakpoint.
    std::vector<Rational> candidates(const Rational& len) const {
        std::vector<Rational> ts;
        ts.reserve(2 * (pos.size() + apos.size()) + 1);
        ts.emplace_back(-1);
        auto push = [&ts](const Rational& t) {
            if (t >= -1 && t < 1) ts.push_back(t);
        };
        for (const Rational& p : pos) {
            push(p);
            push(p - len);
        }
        for (const Rational& p : apos) {
            push(p);
            push(p - len);
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        return ts;
    }
};

double bracket_value(const ConstructionParams& params, std::size_t k, const Rational& s,
                     const Rational& interval_length) {
    BigInt base = params.N[0];
    mpz_mul_2exp(base.get_mpz_t(), base.get_mpz_t(), 2 * k);
    BigInt prod(1);
    for (std::size_t j = 0; j + 1 < k; ++j) prod *= params.N[j];
    double t1 = z_to_d(base, MPFR_RNDU);
    double t2 = pow_mpq(Rational(prod), params.delta, Round::Up);
    double t3 = pow_mpq(interval_length, Rational(1) - s, Round::Up);
    return mul_dir(mul_dir(t1, t2, MPFR_RNDU), t3, MPFR_RNDU);
}

void check_s(const Rational& s) {
    if (s <= 0 || s > 1) {
        throw std::invalid_argument("dimension exponent must lie in (0, 1]");
    }
}

}  // namespace

double theoretical_constant(const ConstructionParams& params, std::size_t k, const Rational& s,
                            const Rational& interval_length) {
    check_s(s);
    if (k < 1 || k > params.depth()) {
        throw std::invalid_argument("stage index out of range");
    }
    if (interval_length * Rational(params.N[k - 1]) < 1) {
        throw std::invalid_argument("scale outside stage bracket");
    }
    if (k >= 2 && interval_length * Rational(params.N[k - 2]) >= 1) {
        throw std::invalid_argument("scale outside stage bracket");
    }
    return bracket_value(params, k, s, interval_length);
}

std::vector<double> stage_constants(const ConstructionParams& params, const Rational& s,
                                    std::size_t upto) {
    check_s(s);
    if (upto > params.depth()) throw std::invalid_argument("stage index out of range");
    std::vector<double> out;
    out.reserve(upto);
    for (std::size_t k = 1; k <= upto; ++k) {
        out.push_back(theoretical_constant(params, k, s, Rational(1) / Rational(params.N[k - 1])));
    }
    return out;
}

DimensionReport mass_ratio_audit(const Measure& mu, const Rational& s,
                                 const Rational& finest_scale, const ConstructionParams* params,
                                 bool parallel) {
    check_s(s);
    if (finest_scale <= 0) throw std::invalid_argument("finest scale must be positive");
    if (finest_scale > 2) throw std::invalid_argument("finest scale exceeds the circle");
    for (const UniformPart& p : mu.uniform_parts()) {
        if (p.weight < 0) throw std::invalid_argument("mass ratio audit needs a nonnegative measure");
    }
    for (const Atom& a : mu.atoms()) {
        if (a.mass < 0) throw std::invalid_argument("mass ratio audit needs a nonnegative measure");
    }

    std::vector<Rational> scales;
    for (Rational len(2); len >= finest_scale; len /= 2) scales.push_back(len);
    if (params != nullptr) {
        for (std::size_t j = 0; j < params->depth(); ++j) {
            Rational n_scale = Rational(1) / Rational(params->N[j]);
            Rational l_scale = Rational(1) / Rational(params->L[j]);
            if (n_scale >= finest_scale) scales.push_back(n_scale);
            if (l_scale >= finest_scale) scales.push_back(l_scale);
        }
    }
    std::sort(scales.begin(), scales.end(), std::greater<Rational>());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

    SupportScan scan(mu);
    DimensionReport report;
    report.s = s;
    report.per_scale.resize(scales.size());

    std::int64_t count = static_cast<std::int64_t>(scales.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) {
        const Rational& len = scales[static_cast<std::size_t>(i)];
        ScaleRow row;
        row.scale = len;
        Rational best_mass;
        Rational best_t(-1);
        if (len == 2) {
            best_mass = scan.total;
        } else {
            for (const Rational& t : scan.candidates(len)) {
                Rational mass = scan.window_mass(t, len);
                if (mass > best_mass) {
                    best_mass = mass;
                    best_t = t;
                }
            }
        }
        if (best_mass > 0) {
            row.achiever = RationalInterval(CirclePoint(best_t + len / 2), len / 2);
        }
        double denom = pow_mpq(len, s, Round::Up);
        row.max_ratio = div_dir(q_to_d(best_mass, MPFR_RNDD), denom, MPFR_RNDD);
        if (params != nullptr) {
            std::size_t k = 0;
            for (std::size_t j = 0; j < params->depth(); ++j) {
                if (Rational(params->N[j]) * len >= 1) {
                    k = j + 1;
                    break;
                }
            }
            if (k == 0) {
                k = params->depth();
                row.bracket_extrapolated = true;
                row.theoretical = bracket_value(*params, k, s, len);
            } else {
                row.theoretical = theoretical_constant(*params, k, s, len);
            }
            row.pass = row.max_ratio <= *row.theoretical;
        }
        report.per_scale[static_cast<std::size_t>(i)] = std::move(row);
    }

    for (const ScaleRow& row : report.per_scale) {
        if (row.max_ratio > report.empirical_max_ratio) {
            report.empirical_max_ratio = row.max_ratio;
            report.theoretical_c = row.theoretical;
        }
        if (!row.pass) report.passed = false;
    }
    return report;
}

long box_count(const StageFamily& family, const Rational& scale) {
    if (scale <= 0) throw std::invalid_argument("box scale must be positive");
    BigInt total_z = ceil_q(Rational(2) / scale);
    if (total_z > 200'000'000) throw std::invalid_argument("box grid too fine");
    std::size_t total = static_cast<std::size_t>(total_z.get_ui());
    std::vector<bool> marks(total, false);
    for (const RationalInterval& interval : family.intervals) {
        for (const Segment& seg : to_segments(interval)) {
            Rational q_lo = (seg.lo + 1) / scale;
            Rational q_hi = (seg.hi + 1) / scale;
            BigInt k_lo = floor_q(q_lo);
            if (is_integer(q_lo)) k_lo -= 1;  // boundary touch of the box below
            BigInt k_hi = floor_q(q_hi);
            if (k_hi - k_lo + 1 >= BigInt(static_cast<unsigned long>(total))) {
                return static_cast<long>(total);
            }
            for (BigInt k = k_lo; k <= k_hi; ++k) {
                BigInt m = k % BigInt(static_cast<unsigned long>(total));
                if (m < 0) m += static_cast<unsigned long>(total);
                marks[static_cast<std::size_t>(m.get_ui())] = true;
            }
        }
    }
    return static_cast<long>(std::count(marks.begin(), marks.end(), true));
}

double dimension_estimate(const ConstructionParams& params, const StageFamily& family) {
    if (family.stage < 1 || family.stage > params.depth()) {
        throw std::invalid_argument("stage index out of range");
    }
    const BigInt& L = params.L[family.stage - 1];
    long count = box_count(family, Rational(1) / Rational(L));
    if (count <= 0) throw std::invalid_argument("empty family");
    return std::log(static_cast<double>(count)) / std::log(mpz_get_d(L.get_mpz_t()));
}

}  // namespace cantorfour
