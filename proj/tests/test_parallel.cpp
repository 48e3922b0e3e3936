#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <omp.h>

#include <cstring>
#include <random>
#include <vector>

#include "cantorfour/dimension.hpp"
#include "cantorfour/fourier.hpp"
#include "cantorfour/measure.hpp"
#include "doctest.h"

using namespace cantorfour;

namespace {

Measure sample_measure(std::mt19937_64& gen) {
    std::uniform_int_distribution<long> num(-63, 63);
    std::uniform_int_distribution<long> hnum(5, 20);
    long c1 = num(gen);
    long c2 = c1 + 96;  // disjoint by construction (denominator 64)
    std::vector<UniformPart> parts = {
        {RationalInterval(CirclePoint(Rational(c1, 64)), Rational(hnum(gen), 512)),
         Rational(num(gen), 100)},
        {RationalInterval(CirclePoint(Rational(c2, 64)), Rational(hnum(gen), 512)),
         Rational(num(gen) + 64, 100)},
    };
    std::vector<Atom> atoms = {
        {CirclePoint(Rational(c1 * 4 + 2, 256)), Rational(num(gen), 200)},
    };
    return Measure(std::move(parts), std::move(atoms));
}

bool identical(const std::vector<FourierCoefficient>& a,
               const std::vector<FourierCoefficient>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].frequency != b[i].frequency) return false;
        if (std::memcmp(&a[i].value, &b[i].value, sizeof a[i].value) != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("parallel coefficient sweep matches the serial loop bit for bit") {
    omp_set_num_threads(2);
    std::mt19937_64 gen(12345);
    std::vector<Frequency> ns;
    for (long n = -2000; n <= 2000; ++n) ns.emplace_back(n);
    for (int trial = 0; trial < 5; ++trial) {
        Measure mu = sample_measure(gen);
        auto par = coefficients_batch(mu, ns);
        auto ser = coefficients_batch_serial(mu, ns);
        CHECK(identical(par, ser));
        // Each entry also matches a direct single evaluation.
        for (std::size_t i = 0; i < ns.size(); i += 397) {
            FourierCoefficient one = coefficient(mu, ns[i]);
            CHECK(std::memcmp(&one.value, &ser[i].value, sizeof one.value) == 0);
        }
    }
}

TEST_CASE("repeated parallel sweeps are deterministic") {
    omp_set_num_threads(2);
    std::mt19937_64 gen(777);
    Measure mu = sample_measure(gen);
    std::vector<Frequency> ns;
    for (long n = -500; n <= 500; ++n) ns.emplace_back(7 * n);
    auto first = coefficients_batch(mu, ns);
    auto second = coefficients_batch(mu, ns);
    CHECK(identical(first, second));
}

TEST_CASE("parallel audit rows equal the serial rows") {
    omp_set_num_threads(2);
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    Measure mu = stage_measure(p, 1);
    DimensionReport par = mass_ratio_audit(mu, Rational(1, 2), Rational(1, 256), &p, true);
    DimensionReport ser = mass_ratio_audit(mu, Rational(1, 2), Rational(1, 256), &p, false);
    REQUIRE(par.per_scale.size() == ser.per_scale.size());
    for (std::size_t i = 0; i < par.per_scale.size(); ++i) {
        const ScaleRow& a = par.per_scale[i];
        const ScaleRow& b = ser.per_scale[i];
        CHECK(a.scale == b.scale);
        CHECK(std::memcmp(&a.max_ratio, &b.max_ratio, sizeof a.max_ratio) == 0);
        CHECK(a.theoretical.has_value() == b.theoretical.has_value());
        if (a.theoretical && b.theoretical) {
            CHECK(std::memcmp(&*a.theoretical, &*b.theoretical, sizeof(double)) == 0);
        }
        CHECK(a.pass == b.pass);
    }
    CHECK(par.passed == ser.passed);
}
