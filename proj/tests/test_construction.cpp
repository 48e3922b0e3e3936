#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>

#include "cantorfour/construction.hpp"
#include "cantorfour/errors.hpp"
#include "cantorfour/measure.hpp"
#include "doctest.h"

using namespace cantorfour;

TEST_CASE("integer power ceiling") {
    // delta = 1/2: ceil(n^{3/2});  16^{3/2} = 64 exactly, 4097^{3/2} is not
    // an integer and rounds up to 262241 (262241^2 >= 4097^3 > 262240^2).
    CHECK(ceil_power(BigInt(16), Rational(1, 2)) == 64);
    CHECK(ceil_power(BigInt(4097), Rational(1, 2)) == 262241);
    // delta = 1: exact squares.
    CHECK(ceil_power(BigInt(4096), Rational(1)) == BigInt(4096) * 4096);
    // delta = 2/5: ceil(n^{7/5}); 32^{7/5} = 128 exactly, 33^{7/5} rounds up
    // to 134 (134^5 >= 33^7 > 133^5).
    CHECK(ceil_power(BigInt(32), Rational(2, 5)) == 128);
    CHECK(ceil_power(BigInt(33), Rational(2, 5)) == 134);
}

TEST_CASE("generated sequence matches hand-computed values") {
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 3);
    CHECK(p.delta == Rational(1, 2));
    REQUIRE(p.N.size() == 3);
    CHECK(p.N[0] == 16);
    CHECK(p.N[1] == 4097);
    CHECK(p.N[2] == BigInt("1099780063233"));
    CHECK(p.L[0] == 64);
    CHECK(p.L[1] == 262241);
    // L_3 is the least integer with L^2 >= N_3^3: check both sides exactly.
    BigInt n3cubed = p.N[2] * p.N[2] * p.N[2];
    CHECK(p.L[2] * p.L[2] >= n3cubed);
    CHECK((p.L[2] - 1) * (p.L[2] - 1) < n3cubed);

    CHECK(growth_condition_holds(p, 1));
    CHECK(growth_condition_holds(p, 2));

    CHECK_THROWS_AS(generate_sequence(Rational(1), BigInt(16), 2), std::invalid_argument);
    CHECK_THROWS_AS(generate_sequence(Rational(1, 2), BigInt(3), 2), std::invalid_argument);
}

TEST_CASE("explicit family skips the growth requirement but keeps L exact") {
    ConstructionParams p = explicit_family(Rational(1), {BigInt(4), BigInt(16), BigInt(64)});
    CHECK(p.alpha == 0);
    CHECK(p.L[0] == 16);
    CHECK(p.L[1] == 256);
    CHECK(p.L[2] == 4096);
    // N_2 = 16 is far below what the growth condition would demand.
    CHECK(!growth_condition_holds(p, 1));
    CHECK_THROWS_AS(explicit_family(Rational(1), {BigInt(16), BigInt(16)}), std::invalid_argument);
}

TEST_CASE("growth condition boundary") {
    // With N_2 = 4096 the step-1 condition is an exact tie and must fail;
    // 4097 passes.  (1024^2 * 16 = 2^24 vs N_2^2.)
    CHECK(!growth_condition_holds(explicit_family(Rational(1, 2), {BigInt(16), BigInt(4096)}), 1));
    CHECK(growth_condition_holds(explicit_family(Rational(1, 2), {BigInt(16), BigInt(4097)}), 1));
}

TEST_CASE("stage families: counts, geometry, containment") {
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    StageFamily d1 = build_stage(p, 1);
    REQUIRE(d1.intervals.size() == 16);
    for (const RationalInterval& iv : d1.intervals) {
        CHECK(iv.half_length == Rational(1, 128));
        // Center sits on the stage-1 grid.
        CHECK(circle_distance(iv.center, p.N[0]) == 0);
    }

    CHECK(children_per_parent(p, 2) == 29);
    StageFamily d2 = build_stage(p, 2);
    REQUIRE(d2.intervals.size() == 464);
    for (std::size_t i = 0; i < d2.intervals.size(); ++i) {
        const RationalInterval& child = d2.intervals[i];
        CHECK(child.half_length == Rational(1, 2 * 262241));
        CHECK(circle_distance(child.center, p.N[1]) == 0);
        const RationalInterval& parent = d1.intervals[d2.parent_map[i]];
        CHECK(circle_gap(child.center, parent.center) + child.half_length <= parent.half_length);
    }
    CHECK(window_property_holds(p, d2, 2));

    // The covering mode takes every contained grid interval, so it can only
    // be larger than the pruned family.
    StageFamily all2 = build_stage(p, 2, StageMode::AllContained);
    CHECK(all2.intervals.size() >= d2.intervals.size());
}

TEST_CASE("slow-growing families only support the covering mode") {
    ConstructionParams p = explicit_family(Rational(1), {BigInt(4), BigInt(16), BigInt(64)});
    // floor(16 / (2*16)) - 3 < 1: pruning impossible.
    CHECK_THROWS_AS(build_stage(p, 2, StageMode::Pruned), std::invalid_argument);
    StageFamily f3 = build_stage(p, 3, StageMode::AllContained);
    // Each parent admits exactly its one concentric child here.
    CHECK(f3.intervals.size() == 4);
    for (const RationalInterval& iv : f3.intervals) {
        CHECK(iv.half_length == Rational(1, 2 * 4096));
    }
    CHECK(window_property_holds(p, f3, 3));
}

TEST_CASE("stage measure distributes mass equally") {
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    Measure mu = stage_measure(p, 2);
    CHECK(total_variation(mu) == 1);
    REQUIRE(mu.uniform_parts().size() == 464);
    StageFamily d2 = build_stage(p, 2);
    CHECK(measure_of(mu, d2.intervals[0]) == Rational(1, 464));
    CHECK(measure_of(mu, d2.intervals[463]) == Rational(1, 464));
}

TEST_CASE("grid deviation over an interval") {
    // Interval [1/32, 3/32] straddles the peak 1/16 of dist(., 2Z/16)?  No:
    // the peak of the sawtooth is at odd multiples of 1/16; 1/16 lies inside,
    // so the sup is the full 1/16.
    RationalInterval with_peak(CirclePoint(Rational(1, 16)), Rational(1, 32));
    CHECK(max_grid_deviation(with_peak, BigInt(16)) == Rational(1, 16));
    // [1/64, 1/32] stays on one slope: sup at the right endpoint.
    RationalInterval slope(CirclePoint(Rational(3, 128)), Rational(1, 128));
    CHECK(max_grid_deviation(slope, BigInt(16)) == Rational(1, 32));
}

TEST_CASE("window property fails off the grid") {
    ConstructionParams p = explicit_family(Rational(1), {BigInt(4)});
    StageFamily off;
    off.stage = 1;
    off.intervals.push_back(RationalInterval(CirclePoint(Rational(1, 3)), Rational(1, 64)));
    off.parent_map.push_back(0);
    CHECK(!window_property_holds(p, off, 1));
}

TEST_CASE("truncation sets are exactly the grid-window intersections") {
    ConstructionParams p = explicit_family(Rational(1), {BigInt(4), BigInt(16), BigInt(64)});
    TruncationSet set = truncation_set(p, Rational(3), 3);
    CHECK(!set.intervals.empty());
    // Every point of the set is within 3/L_j of each grid; verify on the
    // materialized intervals by the exact sup.
    for (const RationalInterval& iv : set.intervals) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(Rational(p.L[j]) * max_grid_deviation(iv, p.N[j]) <= 3);
        }
    }
    // Membership probes.  x = 1/4096: deviations (x, x, x), scaled
    // (16x, 256x, 4096x) all <= 3: member.
    auto member = [&set](const Rational& x) {
        CirclePoint pt{Rational(x)};
        for (const RationalInterval& iv : set.intervals) {
            if (contains(iv, pt)) return true;
        }
        return false;
    };
    CHECK(member(Rational(1, 4096)));
    // x = 1/32: dist to 2Z/16 is 1/32, times L_2 = 256 gives 8 > 3: excluded.
    CHECK(!member(Rational(1, 32)));
    // Grid points themselves always belong.
    CHECK(member(Rational(1, 2)));
    CHECK(member(Rational(0)));

    // Larger t keeps more of the circle.
    TruncationSet wider = truncation_set(p, Rational(8), 3);
    Rational len_narrow(0), len_wide(0);
    for (const RationalInterval& iv : set.intervals) len_narrow += iv.length();
    for (const RationalInterval& iv : wider.intervals) len_wide += iv.length();
    CHECK(len_wide >= len_narrow);
}
