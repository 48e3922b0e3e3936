#pragma once

#include <vector>

#include "cantorfour/rational.hpp"

namespace cantorfour {

// Closed arc on the circle, given by its midpoint and half its length.
// half_length may be at most 1, i.e. the arc fits in the circle; equality
// means the arc is the whole circle.
struct RationalInterval {
    CirclePoint center;
    Rational half_length;

    RationalInterval(CirclePoint c, Rational h);

    // Lifted endpoints center ± half_length.  lo may drop below -1 and hi may
    // exceed +1; callers that need fundamental-domain pieces should go through
    // to_segments instead.
    Rational lo() const { return center.value() - half_length; }
    Rational hi() const { return center.value() + half_length; }

    Rational length() const { return 2 * half_length; }

    bool operator==(const RationalInterval& o) const {
        return center == o.center && half_length == o.half_length;
    }
};

// Non-wrapping closed piece of the fundamental domain, -1 <= lo <= hi <= 1.
struct Segment {
    Rational lo;
    Rational hi;
};

// Decomposes an arc into one or two segments of [-1,1].  A wrapping arc
// yields two pieces that meet only at the glue point -1 == 1.
std::vector<Segment> to_segments(const RationalInterval& iv);

bool contains(const RationalInterval& iv, const CirclePoint& x);

// Exact: closed arcs are disjoint iff the gap between their centers exceeds
// the sum of their half-lengths (touching endpoints count as intersecting).
bool disjoint(const RationalInterval& a, const RationalInterval& b);

// Length of the intersection of two arcs, as a subset of the circle.
Rational intersection_length(const RationalInterval& a, const RationalInterval& b);

struct UniformPart {
    RationalInterval interval;
    Rational weight;  // signed total mass spread evenly over the arc
};

struct Atom {
    CirclePoint point;
    Rational mass;  // signed
};

// Finite signed measure: finitely many uniform parts on pairwise disjoint
// arcs plus finitely many atoms at distinct points.  Immutable after
// construction; the constructor validates disjointness exactly and throws
// std::invalid_argument on overlap or duplicate atoms.
class Measure {
public:
    Measure() = default;
    Measure(std::vector<UniformPart> parts, std::vector<Atom> atoms);

    const std::vector<UniformPart>& uniform_parts() const { return parts_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    bool is_zero() const { return parts_.empty() && atoms_.empty(); }

private:
    std::vector<UniformPart> parts_;
    std::vector<Atom> atoms_;
};

// ‖μ‖ = Σ|weights| + Σ|masses|, exact.
Rational total_variation(const Measure& mu);

// μ restricted to the union of `keep` (which must be pairwise disjoint):
// atoms outside are dropped, uniform parts are clipped with weights scaled
// by the fraction of length retained.
Measure restrict(const Measure& mu, const std::vector<RationalInterval>& keep);

// μ(I), exact.
Rational measure_of(const Measure& mu, const RationalInterval& iv);

// Uniform measure of the given total mass on the whole circle.
Measure lebesgue(const Rational& total_mass);

Measure dirac(const CirclePoint& p, const Rational& mass);

}  // namespace cantorfour
