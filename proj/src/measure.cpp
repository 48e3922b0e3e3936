#include "cantorfour/measure.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace cantorfour {

RationalInterval::RationalInterval(CirclePoint c, Rational h)
    : center(std::move(c)), half_length(std::move(h)) {
    if (sgn(half_length) <= 0) {
        throw std::invalid_argument("interval half_length must be positive");
    }
    if (half_length > 1) {
        throw std::invalid_argument("interval half_length must be at most 1");
    }
}

std::vector<Segment> to_segments(const RationalInterval& iv) {
    if (iv.half_length == 1) {
        return {{Rational(-1), Rational(1)}};
    }
    Rational lo = iv.lo();
    Rational hi = iv.hi();
    if (lo < -1) {
        return {{Rational(-1), hi}, {lo + 2, Rational(1)}};
    }
    if (hi > 1) {
        return {{lo, Rational(1)}, {Rational(-1), hi - 2}};
    }
    return {{lo, hi}};
}

bool contains(const RationalInterval& iv, const CirclePoint& x) {
    return circle_gap(x, iv.center) <= iv.half_length;
}

bool disjoint(const RationalInterval& a, const RationalInterval& b) {
    // Near-side test suffices: disjointness forces h_a + h_b < gap <= 1,
    // which rules out meeting around the far side (far gap >= 1).
    return circle_gap(a.center, b.center) > a.half_length + b.half_length;
}

namespace {

// Intersection of two arcs as segments of [-1,1].  Degenerate single-point
// overlaps are kept (length zero); callers filter as needed.
std::vector<Segment> intersect_segments(const RationalInterval& a,
                                        const RationalInterval& b) {
    std::vector<Segment> out;
    for (const Segment& s : to_segments(a)) {
        for (const Segment& t : to_segments(b)) {
            Rational lo = std::max(s.lo, t.lo);
            Rational hi = std::min(s.hi, t.hi);
            if (lo <= hi) {
                out.push_back({lo, hi});
            }
        }
    }
    return out;
}

}  // namespace

Rational intersection_length(const RationalInterval& a, const RationalInterval& b) {
    Rational len = 0;
    for (const Segment& s : intersect_segments(a, b)) {
        len += s.hi - s.lo;
    }
    // Wrap-adjacent pieces double-count nothing: segments of one arc meet only
    // at the glue point, which has length zero.
    return len;
}

Measure::Measure(std::vector<UniformPart> parts, std::vector<Atom> atoms)
    : parts_(std::move(parts)), atoms_(std::move(atoms)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        for (std::size_t j = i + 1; j < parts_.size(); ++j) {
            if (!disjoint(parts_[i].interval, parts_[j].interval)) {
                throw std::invalid_argument("uniform parts must be pairwise disjoint");
            }
        }
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
            if (atoms_[i].point == atoms_[j].point) {
                throw std::invalid_argument("atom points must be pairwise distinct");
            }
        }
    }
}

Rational total_variation(const Measure& mu) {
    Rational tv = 0;
    for (const UniformPart& p : mu.uniform_parts()) {
        tv += abs(p.weight);
    }
    for (const Atom& a : mu.atoms()) {
        tv += abs(a.mass);
    }
    return tv;
}

Measure restrict(const Measure& mu, const std::vector<RationalInterval>& keep) {
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            if (!disjoint(keep[i], keep[j])) {
                throw std::invalid_argument("restriction intervals must be pairwise disjoint");
            }
        }
    }

    std::vector<UniformPart> parts;
    for (const UniformPart& p : mu.uniform_parts()) {
        // Gather the clipped pieces of this part across all keep arcs.
        std::vector<Segment> pieces;
        bool full_circle = false;
        for (const RationalInterval& k : keep) {
            for (Segment s : intersect_segments(p.interval, k)) {
                if (s.lo == s.hi) continue;  // point overlap carries no mass
                if (s.lo == -1 && s.hi == 1) full_circle = true;
                pieces.push_back(std::move(s));
            }
        }
        if (full_circle) {
            parts.push_back(p);
            continue;
        }
        // Pieces meeting at the glue point -1 == 1 form a single arc; merge
        // them so the result validates as pairwise disjoint.
        auto at_top = std::find_if(pieces.begin(), pieces.end(),
                                   [](const Segment& s) { return s.hi == 1; });
        auto at_bottom = std::find_if(pieces.begin(), pieces.end(),
                                      [](const Segment& s) { return s.lo == -1; });
        if (at_top != pieces.end() && at_bottom != pieces.end() && at_top != at_bottom) {
            Segment merged{at_top->lo, at_bottom->hi + 2};  // lifted past +1
            std::size_t ia = std::size_t(at_top - pieces.begin());
            std::size_t ib = std::size_t(at_bottom - pieces.begin());
            if (ia < ib) std::swap(ia, ib);
            pieces.erase(pieces.begin() + long(ia));
            pieces.erase(pieces.begin() + long(ib));
            pieces.push_back(std::move(merged));
        }
        Rational full = p.interval.length();
        for (const Segment& s : pieces) {
            Rational len = s.hi - s.lo;
            RationalInterval piece(CirclePoint((s.lo + s.hi) / 2), len / 2);
            parts.push_back({std::move(piece), p.weight * len / full});
        }
    }

    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms()) {
        for (const RationalInterval& k : keep) {
            if (contains(k, a.point)) {
                atoms.push_back(a);
                break;
            }
        }
    }
    return Measure(std::move(parts), std::move(atoms));
}

Rational measure_of(const Measure& mu, const RationalInterval& iv) {
    Rational total = 0;
    for (const UniformPart& p : mu.uniform_parts()) {
        Rational len = intersection_length(p.interval, iv);
        if (sgn(len) != 0) {
            total += p.weight * len / p.interval.length();
        }
    }
    for (const Atom& a : mu.atoms()) {
        if (contains(iv, a.point)) {
            total += a.mass;
        }
    }
    return total;
}

Measure lebesgue(const Rational& total_mass) {
    if (sgn(total_mass) == 0) {
        return Measure();
    }
    return Measure({{RationalInterval(CirclePoint(Rational(0)), Rational(1)), total_mass}}, {});
}

Measure dirac(const CirclePoint& p, const Rational& mass) {
    return Measure({}, {{p, mass}});
}

}  // namespace cantorfour
