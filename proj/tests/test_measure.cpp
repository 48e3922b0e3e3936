#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>

#include "cantorfour/measure.hpp"
#include "doctest.h"

using namespace cantorfour;

namespace {
RationalInterval iv(long cn, long cd, long hn, long hd) {
    return RationalInterval(CirclePoint(Rational(cn, cd)), Rational(hn, hd));
}
}  // namespace

TEST_CASE("interval validation and segments") {
    CHECK_THROWS_AS(RationalInterval(CirclePoint(Rational(0)), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(RationalInterval(CirclePoint(Rational(0)), Rational(-1, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(RationalInterval(CirclePoint(Rational(0)), Rational(5, 4)),
                    std::invalid_argument);

    auto plain = to_segments(iv(0, 1, 1, 4));
    REQUIRE(plain.size() == 1);
    CHECK(plain[0].lo == Rational(-1, 4));
    CHECK(plain[0].hi == Rational(1, 4));

    // An arc through the glue point decomposes into two pieces whose lengths
    // add up to the arc length.
    auto wrapped = to_segments(iv(1, 1, 1, 8));
    REQUIRE(wrapped.size() == 2);
    Rational total = (wrapped[0].hi - wrapped[0].lo) + (wrapped[1].hi - wrapped[1].lo);
    CHECK(total == Rational(1, 4));

    auto full = to_segments(RationalInterval(CirclePoint(Rational(0)), Rational(1)));
    REQUIRE(full.size() == 1);
    CHECK(full[0].lo == Rational(-1));
    CHECK(full[0].hi == Rational(1));
}

TEST_CASE("containment is closed and wraps") {
    RationalInterval a = iv(0, 1, 1, 4);
    CHECK(contains(a, CirclePoint(Rational(1, 4))));
    CHECK(contains(a, CirclePoint(Rational(-1, 4))));
    CHECK(!contains(a, CirclePoint(Rational(26, 100))));

    RationalInterval w = iv(1, 1, 1, 8);
    CHECK(contains(w, CirclePoint(Rational(-15, 16))));
    CHECK(contains(w, CirclePoint(Rational(15, 16))));
    CHECK(!contains(w, CirclePoint(Rational(0))));
}

TEST_CASE("disjointness counts touching arcs as intersecting") {
    CHECK(!disjoint(iv(0, 1, 1, 4), iv(1, 2, 1, 4)));  // touch at 1/4
    CHECK(disjoint(iv(0, 1, 1, 4), iv(3, 5, 1, 4)));
    CHECK(!disjoint(iv(1, 1, 1, 8), iv(-7, 8, 1, 8)));  // meet across the glue
}

TEST_CASE("intersection length") {
    CHECK(intersection_length(iv(0, 1, 1, 4), iv(1, 4, 1, 4)) == Rational(1, 4));
    CHECK(intersection_length(iv(0, 1, 1, 4), iv(3, 5, 1, 4)) == 0);
    // Wrapping arc [3/4, 5/4] against [-1, -3/4]: they share exactly [1, 5/4]
    // i.e. length 1/4 of the circle.
    CHECK(intersection_length(iv(1, 1, 1, 4), iv(-7, 8, 1, 8)) == Rational(1, 4));
    // Nested
    CHECK(intersection_length(iv(0, 1, 1, 2), iv(0, 1, 1, 8)) == Rational(1, 4));
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(Measure({{iv(0, 1, 1, 4), Rational(1)}, {iv(1, 8, 1, 4), Rational(1)}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Measure({}, {{CirclePoint(Rational(0)), Rational(1, 2)},
                                 {CirclePoint(Rational(0)), Rational(1, 4)}}),
                    std::invalid_argument);
    Measure ok({{iv(0, 1, 1, 4), Rational(1, 2)}}, {{CirclePoint(Rational(1, 2)), Rational(1, 4)}});
    CHECK(!ok.is_zero());
    CHECK(Measure().is_zero());
}

TEST_CASE("total variation is the sum of absolute masses") {
    Measure mu({{iv(0, 1, 1, 4), Rational(-3, 4)}}, {{CirclePoint(Rational(1, 2)), Rational(1, 4)}});
    CHECK(total_variation(mu) == Rational(1));
}

TEST_CASE("measure of an interval, including boundary atoms") {
    Measure mu({{iv(0, 1, 1, 4), Rational(1)}}, {{CirclePoint(Rational(1, 4)), Rational(1, 8)}});
    // Window [0, 1/4] holds half the part's length plus the atom sitting on
    // its right endpoint.
    CHECK(measure_of(mu, iv(1, 8, 1, 8)) == Rational(1, 2) + Rational(1, 8));
    // Window [1/4, 1/2] meets the part only at the single point 1/4 (zero
    // length) but contains the atom.
    CHECK(measure_of(mu, iv(3, 8, 1, 8)) == Rational(1, 8));
    CHECK(measure_of(mu, RationalInterval(CirclePoint(Rational(0)), Rational(1))) == Rational(9, 8));
}

TEST_CASE("restrict clips parts proportionally and keeps boundary atoms") {
    Measure mu({{iv(0, 1, 1, 4), Rational(1)}}, {{CirclePoint(Rational(1, 4)), Rational(1, 8)}});
    std::vector<RationalInterval> keep{iv(1, 8, 1, 8)};  // [0, 1/4]
    Measure r = restrict(mu, keep);
    CHECK(total_variation(r) == Rational(1, 2) + Rational(1, 8));
    CHECK(measure_of(r, keep[0]) == total_variation(r));

    // Idempotence.
    Measure rr = restrict(r, keep);
    CHECK(total_variation(rr) == total_variation(r));
    CHECK(measure_of(rr, iv(1, 16, 1, 16)) == measure_of(r, iv(1, 16, 1, 16)));

    // Restricting to the whole circle changes nothing.
    std::vector<RationalInterval> all{RationalInterval(CirclePoint(Rational(0)), Rational(1))};
    CHECK(total_variation(restrict(mu, all)) == total_variation(mu));

    // Atom outside the kept set disappears.
    Measure gone = restrict(mu, {iv(-1, 2, 1, 8)});
    CHECK(gone.atoms().empty());
}

TEST_CASE("restrict handles arcs across the glue point") {
    // Part on [3/4, 5/4]; keep a window centered at the glue.
    Measure mu({{iv(1, 1, 1, 8), Rational(1)}}, {});
    Measure r = restrict(mu, {iv(1, 1, 1, 16)});
    CHECK(total_variation(r) == Rational(1, 2));  // half the length kept
    // The kept mass sits entirely inside the window.
    CHECK(measure_of(r, iv(1, 1, 1, 16)) == Rational(1, 2));
}

TEST_CASE("lebesgue and dirac helpers") {
    Measure leb = lebesgue(Rational(1));
    CHECK(total_variation(leb) == 1);
    CHECK(measure_of(leb, iv(0, 1, 1, 4)) == Rational(1, 4));
    Measure d = dirac(CirclePoint(Rational(1, 3)), Rational(2, 5));
    CHECK(total_variation(d) == Rational(2, 5));
    CHECK(measure_of(d, iv(1, 3, 1, 100)) == Rational(2, 5));
    CHECK(measure_of(d, iv(-1, 2, 1, 100)) == 0);
}
