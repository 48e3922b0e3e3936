#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cantorfour/errors.hpp"
#include "cantorfour/io.hpp"
#include "doctest.h"

using namespace cantorfour;
using cantorfour::io::json;

TEST_CASE("rational serialization round trip") {
    Rational q(-7, 12);
    CHECK(io::rational_from_json(io::to_json(q)) == q);

    Rational big(BigInt("123456789012345678901234567890123456789"),
                 BigInt("9876543210987654321098765432109876543211"));
    big.canonicalize();
    json j = io::to_json(big);
    CHECK(j.at("num").is_string());
    CHECK(io::rational_from_json(j) == big);

    // Integer shorthand is accepted on input.
    CHECK(io::rational_from_json(json(-5)) == Rational(-5));

    json zero_den;
    zero_den["num"] = "1";
    zero_den["den"] = "0";
    CHECK_THROWS_AS(io::rational_from_json(zero_den), std::invalid_argument);

    json missing;
    missing["num"] = "1";
    CHECK_THROWS_AS(io::rational_from_json(missing), std::invalid_argument);
    CHECK_THROWS_AS(io::rational_from_json(json("3/4")), std::invalid_argument);
}

TEST_CASE("measure serialization round trip") {
    Measure mu({UniformPart{RationalInterval(CirclePoint(Rational(1, 3)), Rational(1, 8)),
                            Rational(2, 5)},
                UniformPart{RationalInterval(CirclePoint(Rational(1)), Rational(1, 16)),
                            Rational(-1, 5)}},
               {Atom{CirclePoint(Rational(-1, 2)), Rational(2, 5)}});
    json j = io::to_json(mu);
    Measure back = io::measure_from_json(j);
    CHECK(io::to_json(back) == j);
    CHECK(total_variation(back) == total_variation(mu));
    RationalInterval probe(CirclePoint(Rational(1, 3)), Rational(1, 8));
    CHECK(measure_of(back, probe) == measure_of(mu, probe));
    // Serialization is deterministic.
    CHECK(j.dump(2) == io::to_json(mu).dump(2));
}

TEST_CASE("construction parameters round trip and consistency checks") {
    ConstructionParams p = generate_sequence(Rational(1, 2), BigInt(16), 2);
    json j = io::to_json(p);
    ConstructionParams back = io::params_from_json(j);
    CHECK(back.delta == p.delta);
    CHECK(back.alpha == p.alpha);
    REQUIRE(back.N.size() == p.N.size());
    for (std::size_t i = 0; i < p.N.size(); ++i) {
        CHECK(back.N[i] == p.N[i]);
        CHECK(back.L[i] == p.L[i]);
    }

    json bad_alpha = j;
    bad_alpha["alpha"] = io::to_json(Rational(1, 3));
    CHECK_THROWS_AS(io::params_from_json(bad_alpha), std::invalid_argument);

    json bad_l = j;
    bad_l["L"][0] = "65";
    CHECK_THROWS_AS(io::params_from_json(bad_l), std::invalid_argument);

    json short_l = j;
    short_l["L"].erase(1);
    CHECK_THROWS_AS(io::params_from_json(short_l), std::invalid_argument);

    json no_n = j;
    no_n.erase("N");
    CHECK_THROWS_AS(io::params_from_json(no_n), std::invalid_argument);

    // alpha and L are optional: the minimal form reconstructs both.
    json minimal;
    minimal["delta"] = io::to_json(p.delta);
    minimal["N"] = j["N"];
    ConstructionParams from_min = io::params_from_json(minimal);
    CHECK(from_min.alpha == p.alpha);
    CHECK(from_min.L[1] == p.L[1]);
}

TEST_CASE("lacunary sequence round trip") {
    LacunarySequence seq({Frequency(1), Frequency(3), Frequency(9)},
                         {Rational(1), Rational(1, 2), Rational(1, 3)});
    LacunarySequence back = io::sequence_from_json(io::to_json(seq));
    CHECK(back.terms() == seq.terms());
    CHECK(back.coefficients() == seq.coefficients());

    // Default amplitudes materialize as explicit ones after a round trip.
    LacunarySequence plain({Frequency(2), Frequency(5)});
    LacunarySequence plain_back = io::sequence_from_json(io::to_json(plain));
    CHECK(plain_back.coefficients() == std::vector<Rational>{Rational(1), Rational(1)});

    json no_terms;
    no_terms["coefficients"] = json::array();
    CHECK_THROWS_AS(io::sequence_from_json(no_terms), std::invalid_argument);
}

TEST_CASE("certificate serialization") {
    SelectionCertificate cert;
    cert.shift = 1;
    cert.frequencies = {Frequency(3)};
    cert.gamma_chain = {0.5};
    cert.lower_bound = 0.25;
    cert.table.push_back({SignPattern{{-1}}, Frequency(-2), {0.25, 0.0}});
    cert.table.push_back({SignPattern{{0}}, Frequency(1), {0.5, 0.0}});
    cert.table.push_back({SignPattern{{1}}, Frequency(4), {0.25, 0.0}});

    json j = io::to_json(cert);
    CHECK(j.at("shift") == 1);
    CHECK(j.at("frequencies")[0] == 3);
    CHECK(j.at("lower_bound") == 0.25);
    CHECK(j.at("table").size() == 3);
    CHECK(j.at("table")[0].at("frequency") == -2);
    CHECK(j.at("table")[0].at("abs") == 0.25);
    CHECK(j.at("table")[0].at("eps")[0] == -1);
    CHECK(j.at("truncation_levels").empty());

    // 64-bit overflow must refuse to serialize rather than truncate.
    SelectionCertificate wide = cert;
    wide.frequencies = {Frequency(1) << 70};
    CHECK_THROWS_AS(io::to_json(wide), std::invalid_argument);
}

TEST_CASE("family and truncation serialization smoke") {
    ConstructionParams p = explicit_family(Rational(1), {BigInt(4)});
    StageFamily f = build_stage(p, 1, StageMode::AllContained);
    json jf = io::to_json(f);
    CHECK(jf.at("stage") == 1);
    CHECK(jf.at("intervals").size() == 4);
    CHECK(jf.at("parents").size() == 4);

    ConstructionParams p3 = explicit_family(Rational(1), {BigInt(4), BigInt(16), BigInt(64)});
    TruncationSet set = truncation_set(p3, Rational(3), 2);
    json js = io::to_json(set);
    CHECK(js.at("level") == 2);
    CHECK(io::rational_from_json(js.at("t")) == Rational(3));
    CHECK(!js.at("intervals").empty());
}

TEST_CASE("dimension report serialization") {
    DimensionReport r;
    r.s = Rational(1, 2);
    r.empirical_max_ratio = 1.5;
    ScaleRow row;
    row.scale = Rational(1, 4);
    row.max_ratio = 1.5;
    row.theoretical = 2.0;
    row.achiever = RationalInterval(CirclePoint(Rational(0)), Rational(1, 8));
    r.per_scale.push_back(row);
    r.box_counts.emplace_back(Rational(1, 16), 8);
    r.dimension_estimate = 0.75;

    json j = io::to_json(r);
    CHECK(j.at("passed") == true);
    CHECK(j.at("per_scale")[0].at("theoretical") == 2.0);
    CHECK(j.at("per_scale")[0].contains("window"));
    CHECK(j.at("box_counts")[0].at("count") == 8);
    CHECK(j.at("dimension_estimate") == 0.75);

    DimensionReport bare;
    bare.s = Rational(1, 2);
    json jb = io::to_json(bare);
    CHECK(!jb.contains("theoretical_c"));
    CHECK(!jb.contains("dimension_estimate"));
}

TEST_CASE("double formatting is fixed-width scientific enough to round trip") {
    CHECK(io::format_double(0.25) == "0.25");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(0.0) == "0");
    double pi = 3.14159265358979323846;
    CHECK(std::strtod(io::format_double(pi).c_str(), nullptr) == pi);
    CHECK(std::strtod(io::format_double(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("file round trips and error reporting") {
    char tmpl[] = "/tmp/cantorfour_ioXXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    std::string dir(tmpl);

    json j = io::to_json(Rational(22, 7));
    io::write_json(dir + "/q.json", j);
    CHECK(io::read_json(dir + "/q.json") == j);

    io::write_text(dir + "/t.txt", "alpha\n");
    CHECK_THROWS_AS(io::read_json(dir + "/absent.json"), ConfigError);
    CHECK_THROWS_AS(io::write_text(dir + "/no/such/dir.txt", "x"), ConfigError);
}

TEST_CASE("csv output is stable and headerful") {
    std::vector<FourierCoefficient> coeffs = {{{0.25, 0.0}, Frequency(3)}};
    CHECK(io::coefficients_csv(coeffs) ==
          "# fourier coefficients of a rational measure\nn,re,im,abs\n3,0.25,0,0.25\n");

    LacunarySequence seq({Frequency(1), Frequency(3)});
    std::string om = io::omega_csv(omega(seq, 2), 2);
    CHECK(om.rfind("# signed sums of a lacunary sequence\nvalue,eps_1,eps_2\n-4,-1,-1\n", 0) ==
          0);
    CHECK(om.find("\n4,1,1\n") != std::string::npos);

    SelectionCertificate cert;
    cert.shift = 1;
    cert.frequencies = {Frequency(3)};
    cert.gamma_chain = {0.5};
    cert.lower_bound = 0.25;
    cert.table.push_back({SignPattern{{-1}}, Frequency(-2), {0.25, 0.0}});
    std::string cc = io::certificate_csv(cert);
    CHECK(cc == "# selected frequencies: 3\n# shift: 1\n# lower bound: 0.25\n"
                "frequency,re,im,abs,eps_1\n-2,0.25,0,0.25,-1\n");

    DimensionReport r;
    r.s = Rational(2, 5);
    ScaleRow row;
    row.scale = Rational(1, 2);
    row.max_ratio = 1.0;
    r.per_scale.push_back(row);
    CHECK(io::dimension_csv(r) ==
          "# mass ratio audit at exponent s = 2/5\nscale,max_ratio,theoretical,pass,extrapolated\n"
          "1/2,1,,1,0\n");
}
