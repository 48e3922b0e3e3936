#include "cantorfour/construction.hpp"

#include <algorithm>
#include <stdexcept>

#include "cantorfour/errors.hpp"

namespace cantorfour {

namespace {

BigInt floor_q(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
    return r;
}

BigInt ceil_q(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
    return r;
}

unsigned long to_ulong(const BigInt& z, const char* what) {
    if (sgn(z) < 0 || !z.fits_ulong_p()) {
        throw std::invalid_argument(std::string(what) + " out of range");
    }
    return z.get_ui();
}

void check_delta(const Rational& delta) {
    if (sgn(delta) <= 0 || delta > 1) {
        throw std::invalid_argument("delta must lie in (0, 1]");
    }
}

constexpr std::size_t kMaterializeCap = 10'000'000;

}  // namespace

BigInt ceil_power(const BigInt& n, const Rational& delta) {
    check_delta(delta);
    if (sgn(n) <= 0) throw std::invalid_argument("base must be positive");
    unsigned long p = to_ulong(delta.get_num(), "delta numerator");
    unsigned long q = to_ulong(delta.get_den(), "delta denominator");
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), n.get_mpz_t(), q + p);
    BigInt root;
    int exact = mpz_root(root.get_mpz_t(), power.get_mpz_t(), q);
    return exact ? root : root + 1;
}

bool growth_condition_holds(const ConstructionParams& params, std::size_t k) {
    if (k < 1 || k >= params.depth()) {
        throw std::invalid_argument("growth check index out of range");
    }
    unsigned long p = to_ulong(params.delta.get_num(), "delta numerator");
    unsigned long q = to_ulong(params.delta.get_den(), "delta denominator");
    BigInt lhs1_base = params.N[0];
    mpz_class four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, k + 2);
    lhs1_base *= four_pow;
    BigInt lhs1, lhs2(1);
    mpz_pow_ui(lhs1.get_mpz_t(), lhs1_base.get_mpz_t(), q * k);
    for (std::size_t j = 0; j < k; ++j) lhs2 *= params.N[j];
    BigInt lhs2_pow;
    mpz_pow_ui(lhs2_pow.get_mpz_t(), lhs2.get_mpz_t(), p * k);
    BigInt rhs;
    mpz_pow_ui(rhs.get_mpz_t(), params.N[k].get_mpz_t(), q);
    return lhs1 * lhs2_pow < rhs;
}

ConstructionParams generate_sequence(const Rational& alpha, const BigInt& N1, std::size_t depth) {
    if (sgn(alpha) <= 0 || alpha >= 1) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (N1 < 4) throw std::invalid_argument("N1 must be at least 4");
    if (depth < 1) throw std::invalid_argument("depth must be positive");

    ConstructionParams params;
    params.alpha = alpha;
    params.delta = 1 - alpha;
    unsigned long p = to_ulong(params.delta.get_num(), "delta numerator");
    unsigned long q = to_ulong(params.delta.get_den(), "delta denominator");
    params.N.push_back(N1);
    params.L.push_back(ceil_power(N1, params.delta));

    for (std::size_t k = 1; k < depth; ++k) {
        // A = (N1 * 4^{k+2})^{qk} * (prod N_j)^{pk}; next N is the least
        // integer with N^q > A, bumped to at least 12 L_k and past N_k.
        BigInt base = N1;
        mpz_class four_pow;
        mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, k + 2);
        base *= four_pow;
        BigInt A;
        mpz_pow_ui(A.get_mpz_t(), base.get_mpz_t(), q * k);
        BigInt prod(1);
        for (std::size_t j = 0; j < k; ++j) prod *= params.N[j];
        BigInt prod_pow;
        mpz_pow_ui(prod_pow.get_mpz_t(), prod.get_mpz_t(), p * k);
        A *= prod_pow;

        BigInt root;
        mpz_root(root.get_mpz_t(), A.get_mpz_t(), q);
        BigInt cand = root + 1;
        BigInt cand_pow;
        mpz_pow_ui(cand_pow.get_mpz_t(), cand.get_mpz_t(), q);
        while (cand_pow <= A) {
            ++cand;
            mpz_pow_ui(cand_pow.get_mpz_t(), cand.get_mpz_t(), q);
        }
        cand = std::max(cand, BigInt(12 * params.L.back()));
        cand = std::max(cand, BigInt(params.N.back() + 1));
        params.N.push_back(cand);
        params.L.push_back(ceil_power(cand, params.delta));
    }
    return params;
}

ConstructionParams explicit_family(const Rational& delta, std::vector<BigInt> N) {
    check_delta(delta);
    if (N.empty()) throw std::invalid_argument("family requires at least one N");
    for (std::size_t j = 0; j < N.size(); ++j) {
        if (N[j] < 2) throw std::invalid_argument("N entries must be at least 2");
        if (j > 0 && N[j] <= N[j - 1]) {
            throw std::invalid_argument("N must be strictly increasing");
        }
    }
    ConstructionParams params;
    params.delta = delta;
    params.alpha = 1 - delta;
    params.N = std::move(N);
    for (const BigInt& n : params.N) params.L.push_back(ceil_power(n, delta));
    return params;
}

BigInt children_per_parent(const ConstructionParams& params, std::size_t k) {
    if (k < 2 || k > params.depth()) {
        throw std::invalid_argument("children_per_parent needs 2 <= k <= depth");
    }
    BigInt m;
    BigInt den = 2 * params.L[k - 2];
    mpz_fdiv_q(m.get_mpz_t(), params.N[k - 1].get_mpz_t(), den.get_mpz_t());
    return m - 3;
}

namespace {

StageFamily first_stage(const ConstructionParams& params) {
    StageFamily fam;
    fam.stage = 1;
    const BigInt& N = params.N[0];
    Rational half(1, 2 * params.L[0]);
    BigInt m_lo = floor_q(Rational(-N, 2)) + 1;
    BigInt m_hi = floor_q(Rational(N, 2));
    for (BigInt m = m_lo; m <= m_hi; ++m) {
        fam.intervals.emplace_back(CirclePoint(Rational(2 * m, N)), half);
        fam.parent_map.push_back(0);
    }
    return fam;
}

}  // namespace

StageFamily build_stage(const ConstructionParams& params, std::size_t k, StageMode mode) {
    if (k < 1 || k > params.depth()) {
        throw std::invalid_argument("stage index out of range");
    }
    StageFamily fam = first_stage(params);
    for (std::size_t stage = 2; stage <= k; ++stage) {
        Rational h(1, 2 * params.L[stage - 1]);
        Rational parent_h(1, 2 * params.L[stage - 2]);
        Rational slack = parent_h - h;
        const BigInt& N = params.N[stage - 1];

        BigInt want(-1);
        if (mode == StageMode::Pruned) {
            want = children_per_parent(params, stage);
            if (want < 1) throw std::invalid_argument("M_k < 1");
            BigInt projected = want * (long)fam.intervals.size();
            if (projected > (long)kMaterializeCap) {
                throw std::invalid_argument("stage too large to materialize");
            }
        }

        StageFamily next;
        next.stage = stage;
        for (std::size_t parent = 0; parent < fam.intervals.size(); ++parent) {
            Rational c = fam.intervals[parent].center.value();
            BigInt m_lo = ceil_q(Rational(N) * (c - slack) / 2);
            BigInt m_hi = floor_q(Rational(N) * (c + slack) / 2);
            BigInt available = m_hi - m_lo + 1;
            BigInt take = available;
            if (mode == StageMode::Pruned) {
                if (available < want) {
                    throw VerificationError("parent holds fewer contained children than M_k");
                }
                take = want;
            }
            for (BigInt m = m_lo; m < m_lo + take; ++m) {
                next.intervals.emplace_back(CirclePoint(Rational(2 * m, N)), h);
                next.parent_map.push_back(parent);
                if (next.intervals.size() > kMaterializeCap) {
                    throw std::invalid_argument("stage too large to materialize");
                }
            }
        }
        fam = std::move(next);
    }
    return fam;
}

Measure stage_measure(const ConstructionParams& params, std::size_t k, StageMode mode) {
    StageFamily fam = build_stage(params, k, mode);
    Rational w(1, (long)fam.intervals.size());
    std::vector<UniformPart> parts;
    parts.reserve(fam.intervals.size());
    for (const RationalInterval& iv : fam.intervals) {
        parts.push_back({iv, w});
    }
    return Measure(std::move(parts), {});
}

namespace {

struct LiftedSegment {
    Rational lo;
    Rational hi;
};

// Sorted disjoint segments of [-1,1] -> disjoint arcs, gluing across the
// wrap point.
std::vector<RationalInterval> segments_to_arcs(std::vector<LiftedSegment> segs) {
    std::vector<RationalInterval> out;
    if (segs.empty()) return out;
    std::sort(segs.begin(), segs.end(),
              [](const LiftedSegment& a, const LiftedSegment& b) { return a.lo < b.lo; });
    std::vector<LiftedSegment> merged;
    for (const LiftedSegment& s : segs) {
        if (!merged.empty() && s.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, s.hi);
        } else {
            merged.push_back(s);
        }
    }
    if (merged.size() == 1 && merged[0].lo == -1 && merged[0].hi == 1) {
        out.emplace_back(CirclePoint(Rational(0)), Rational(1));
        return out;
    }
    if (merged.size() >= 2 && merged.front().lo == -1 && merged.back().hi == 1) {
        merged.front().lo = merged.back().lo - 2;  // lift the top piece below
        merged.pop_back();
    }
    for (const LiftedSegment& s : merged) {
        if (s.lo == s.hi) continue;  // single points carry no interval
        out.emplace_back(CirclePoint((s.lo + s.hi) / 2), (s.hi - s.lo) / 2);
    }
    std::sort(out.begin(), out.end(), [](const RationalInterval& a, const RationalInterval& b) {
        return a.center.value() < b.center.value();
    });
    return out;
}

}  // namespace

TruncationSet truncation_set(const ConstructionParams& params, const Rational& t, std::size_t J) {
    if (sgn(t) <= 0) throw std::invalid_argument("t must be positive");
    if (J < 1 || J > params.depth()) throw std::invalid_argument("J out of range");

    TruncationSet set;
    set.t = t;
    set.J = J;
    set.intervals = {RationalInterval(CirclePoint(Rational(0)), Rational(1))};

    for (std::size_t j = 1; j <= J; ++j) {
        Rational r = t / params.L[j - 1];
        const BigInt& N = params.N[j - 1];
        if (r >= Rational(1, N)) continue;  // windows already cover the circle

        std::vector<LiftedSegment> pieces;
        for (const RationalInterval& arc : set.intervals) {
            Rational a_lo = arc.lo();
            Rational a_hi = arc.hi();
            BigInt m_lo = ceil_q(Rational(N) * (a_lo - r) / 2);
            BigInt m_hi = floor_q(Rational(N) * (a_hi + r) / 2);
            for (BigInt m = m_lo; m <= m_hi; ++m) {
                Rational g(2 * m, N);
                Rational lo = std::max(a_lo, Rational(g - r));
                Rational hi = std::min(a_hi, Rational(g + r));
                if (lo >= hi) continue;  // empty, or a boundary touch: no arc
                // Re-express in the fundamental domain before merging.
                RationalInterval piece(CirclePoint((lo + hi) / 2), (hi - lo) / 2);
                for (const Segment& s : to_segments(piece)) {
                    pieces.push_back({s.lo, s.hi});
                }
                if (pieces.size() > kMaterializeCap) {
                    throw std::invalid_argument("truncation family too large");
                }
            }
        }
        set.intervals = segments_to_arcs(std::move(pieces));
    }
    return set;
}

Rational max_grid_deviation(const RationalInterval& iv, const BigInt& N) {
    // Peaks of x -> dist(x, 2Z/N) sit at odd multiples of 1/N with value 1/N;
    // an arc avoiding every peak lies on two monotone ramps around one grid
    // point, so its sup is at an endpoint.
    Rational lo = iv.lo();
    Rational hi = iv.hi();
    BigInt m_lo = ceil_q((Rational(N) * lo - 1) / 2);
    BigInt m_hi = floor_q((Rational(N) * hi - 1) / 2);
    if (m_lo <= m_hi) return Rational(1, N);
    Rational d1 = circle_distance(CirclePoint(lo), N);
    Rational d2 = circle_distance(CirclePoint(hi), N);
    return std::max(d1, d2);
}

Rational support_grid_deviation(const Measure& mu, const BigInt& N) {
    Rational worst(0);
    for (const UniformPart& p : mu.uniform_parts()) {
        worst = std::max(worst, max_grid_deviation(p.interval, N));
    }
    for (const Atom& a : mu.atoms()) {
        worst = std::max(worst, circle_distance(a.point, N));
    }
    return worst;
}

bool window_property_holds(const ConstructionParams& params, const StageFamily& family,
                           std::size_t upto) {
    if (upto > params.depth()) throw std::invalid_argument("window index out of range");
    for (const RationalInterval& iv : family.intervals) {
        const CirclePoint points[3] = {CirclePoint(iv.lo()), CirclePoint(iv.hi()), iv.center};
        for (std::size_t j = 1; j <= upto; ++j) {
            for (const CirclePoint& pt : points) {
                Rational d = circle_distance(pt, params.N[j - 1]);
                if (2 * d * params.L[j - 1] > 1) return false;
            }
        }
    }
    return true;
}

}  // namespace cantorfour
