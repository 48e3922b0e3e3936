#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "cantorfour/construction.hpp"
#include "cantorfour/dimension.hpp"
#include "cantorfour/errors.hpp"
#include "cantorfour/measure.hpp"
#include "doctest.h"

using namespace cantorfour;

namespace {

const ScaleRow& row_at(const DimensionReport& r, const Rational& scale) {
    for (const ScaleRow& row : r.per_scale) {
        if (row.scale == scale) return row;
    }
    REQUIRE(false);
    return r.per_scale.front();
}

}  // namespace

TEST_CASE("stage constants against a plain floating-point reference") {
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    Rational s(2, 5);
    // k = 1 at scale 1/16: 16 * 4 * (1/16)^{3/5}.
    double c1 = theoretical_constant(p, 1, s, Rational(1, 16));
    CHECK(c1 == doctest::Approx(64.0 * std::pow(1.0 / 16.0, 0.6)).epsilon(1e-12));
    // k = 2 at scale 1/4097: 16 * 16 * sqrt(16) * (1/4097)^{3/5}.
    double c2 = theoretical_constant(p, 2, s, Rational(1, 4097));
    CHECK(c2 == doctest::Approx(1024.0 * std::pow(1.0 / 4097.0, 0.6)).epsilon(1e-12));

    // Scales must respect the stage bracket [1/N_k, 1/N_{k-1}).
    CHECK_THROWS_AS(theoretical_constant(p, 2, s, Rational(1, 8)), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_constant(p, 1, s, Rational(1, 5000)), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_constant(p, 0, s, Rational(1, 16)), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_constant(p, 3, s, Rational(1, 4097)), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_constant(p, 1, Rational(0), Rational(1, 16)),
                    std::invalid_argument);
    CHECK_THROWS_AS(theoretical_constant(p, 1, Rational(3, 2), Rational(1, 16)),
                    std::invalid_argument);

    std::vector<double> chain = stage_constants(p, s, 2);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == c1);
    CHECK(chain[1] == c2);
    CHECK(chain[0] > chain[1]);
    CHECK_THROWS_AS(stage_constants(p, s, 3), std::invalid_argument);
}

TEST_CASE("window maxima of a single uniform block are exact") {
    // Density 2 on [-1/4, 1/4].
    Measure mu({UniformPart{RationalInterval(CirclePoint(Rational(0)), Rational(1, 4)),
                            Rational(1)}},
               {});
    DimensionReport r = mass_ratio_audit(mu, Rational(1, 2), Rational(1, 8));
    REQUIRE(r.per_scale.size() == 5);  // 2, 1, 1/2, 1/4, 1/8

    // Window length 1/2 captures all the mass: ratio 1 / sqrt(1/2) = sqrt(2).
    CHECK(row_at(r, Rational(1, 2)).max_ratio ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // Window length 1/4 inside the block: mass 1/2, ratio exactly 1.
    CHECK(row_at(r, Rational(1, 4)).max_ratio == 1.0);
    // Window length 1/8: mass 1/4, ratio 1/sqrt(2).
    CHECK(row_at(r, Rational(1, 8)).max_ratio ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    // Whole circle: mass 1 over 2^s.
    CHECK(row_at(r, Rational(2)).max_ratio ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r.empirical_max_ratio == row_at(r, Rational(1, 2)).max_ratio);
    CHECK(!r.theoretical_c.has_value());
    CHECK(r.passed);

    // Reported achievers must reproduce the ratio through the independent
    // interval integrator.
    for (const ScaleRow& row : r.per_scale) {
        REQUIRE(row.achiever.has_value());
        double mass = mpq_get_d(measure_of(mu, *row.achiever).get_mpq_t());
        double len = mpq_get_d(row.scale.get_mpq_t());
        CHECK(row.max_ratio == doctest::Approx(mass / std::sqrt(len)).epsilon(1e-13));
    }
}

TEST_CASE("an atom dominates every scale") {
    Measure mu({}, {Atom{CirclePoint(Rational(1, 2)), Rational(1)}});
    DimensionReport r = mass_ratio_audit(mu, Rational(1, 2), Rational(1, 4));
    CHECK(row_at(r, Rational(1, 2)).max_ratio ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(row_at(r, Rational(1, 4)).max_ratio == 2.0);
    const ScaleRow& fine = row_at(r, Rational(1, 4));
    REQUIRE(fine.achiever.has_value());
    CHECK(measure_of(mu, *fine.achiever) == 1);
}

TEST_CASE("windows follow mass across the circle seam") {
    // Support [7/8, 1] u [-1, -7/8]; one window of length 1/4 holds it all.
    Measure mu({UniformPart{RationalInterval(CirclePoint(Rational(1)), Rational(1, 8)),
                            Rational(1)}},
               {});
    DimensionReport r = mass_ratio_audit(mu, Rational(1, 2), Rational(1, 4));
    CHECK(row_at(r, Rational(1, 4)).max_ratio == 2.0);
}

TEST_CASE("audit rejects signed measures and bad scales") {
    Measure neg({UniformPart{RationalInterval(CirclePoint(Rational(0)), Rational(1, 4)),
                             Rational(-1)}},
                {});
    CHECK_THROWS_AS(mass_ratio_audit(neg, Rational(1, 2), Rational(1, 4)),
                    std::invalid_argument);
    Measure ok({}, {Atom{CirclePoint(Rational(0)), Rational(1)}});
    CHECK_THROWS_AS(mass_ratio_audit(ok, Rational(0), Rational(1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(mass_ratio_audit(ok, Rational(1, 2), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(mass_ratio_audit(ok, Rational(1, 2), Rational(3)), std::invalid_argument);
}

TEST_CASE("stage-two measure passes its own theoretical bound") {
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    Measure mu = stage_measure(p, 2);
    DimensionReport r = mass_ratio_audit(mu, Rational(2, 5), Rational(1, 4097), &p);
    CHECK(r.passed);
    CHECK(r.theoretical_c.has_value());
    for (const ScaleRow& row : r.per_scale) {
        REQUIRE(row.theoretical.has_value());
        CHECK(row.max_ratio <= *row.theoretical);
        CHECK(!row.bracket_extrapolated);  // finest scale is exactly 1/N_2
    }
    // The construction scales 1/16 and 1/4097 are part of the scan.
    row_at(r, Rational(1, 16));
    row_at(r, Rational(1, 4097));
    row_at(r, Rational(1, 64));  // 1/L_1

    // Pushing past 1/N_depth flags the extrapolated bracket.
    DimensionReport deep = mass_ratio_audit(mu, Rational(2, 5), Rational(1, 10000), &p);
    CHECK(row_at(deep, Rational(1, 8192)).bracket_extrapolated);
    CHECK(deep.passed);
}

TEST_CASE("parallel and serial audits agree bit for bit") {
    Measure mu({UniformPart{RationalInterval(CirclePoint(Rational(1, 3)), Rational(1, 16)),
                            Rational(1, 2)},
                UniformPart{RationalInterval(CirclePoint(Rational(-1, 2)), Rational(1, 32)),
                            Rational(1, 4)}},
               {Atom{CirclePoint(Rational(7, 8)), Rational(1, 4)}});
    DimensionReport par = mass_ratio_audit(mu, Rational(1, 3), Rational(1, 64), nullptr, true);
    DimensionReport ser = mass_ratio_audit(mu, Rational(1, 3), Rational(1, 64), nullptr, false);
    REQUIRE(par.per_scale.size() == ser.per_scale.size());
    for (std::size_t i = 0; i < par.per_scale.size(); ++i) {
        CHECK(par.per_scale[i].scale == ser.per_scale[i].scale);
        CHECK(par.per_scale[i].max_ratio == ser.per_scale[i].max_ratio);
    }
    CHECK(par.empirical_max_ratio == ser.empirical_max_ratio);
}

TEST_CASE("box counting by hand") {
    auto family_of = [](std::vector<RationalInterval> ivs) {
        StageFamily f;
        f.stage = 1;
        f.intervals = std::move(ivs);
        f.parent_map.assign(f.intervals.size(), 0);
        return f;
    };

    // [-1/8, 1/8] against boxes of size 1/2: meets exactly 2.
    CHECK(box_count(family_of({RationalInterval(CirclePoint(Rational(0)), Rational(1, 8))}),
                    Rational(1, 2)) == 2);
    // [0, 1/4] against boxes of size 1/4: the left endpoint touches the box
    // below, so 3 boxes.
    CHECK(box_count(family_of({RationalInterval(CirclePoint(Rational(1, 8)), Rational(1, 8))}),
                    Rational(1, 4)) == 3);
    // Wrapping interval [7/8, 9/8]: boxes at both ends of the fundamental
    // domain are the same two boxes.
    CHECK(box_count(family_of({RationalInterval(CirclePoint(Rational(1)), Rational(1, 8))}),
                    Rational(1, 2)) == 2);
    // The full circle saturates the grid.
    CHECK(box_count(family_of({RationalInterval(CirclePoint(Rational(0)), Rational(1))}),
                    Rational(1, 2)) == 4);
    CHECK_THROWS_AS(box_count(family_of({}), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(box_count(family_of({}), Rational(1, 2'000'000'000)),
                    std::invalid_argument);
}

TEST_CASE("box dimension of coarse stage families") {
    // Four intervals of half-length 1/32 on the quarter grid, boxes of size
    // 1/16: each interval meets 2 boxes, no sharing: 8 of 32 boxes.
    ConstructionParams p4 = explicit_family(Rational(1), {BigInt(4)});
    StageFamily f = build_stage(p4, 1, StageMode::AllContained);
    REQUIRE(f.intervals.size() == 4);
    CHECK(box_count(f, Rational(1, 16)) == 8);
    CHECK(dimension_estimate(p4, f) ==
          doctest::Approx(std::log(8.0) / std::log(16.0)).epsilon(1e-12));

    // Stage 1 of the fast-growing family: 16 intervals, 2 boxes each at
    // scale 1/64.
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    StageFamily d1 = build_stage(p, 1);
    CHECK(box_count(d1, Rational(1, 64)) == 32);
    CHECK(dimension_estimate(p, d1) ==
          doctest::Approx(std::log(32.0) / std::log(64.0)).epsilon(1e-12));
}
