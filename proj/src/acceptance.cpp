#include "cantorfour/acceptance.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorfour/construction.hpp"
#include "cantorfour/dimension.hpp"
#include "cantorfour/errors.hpp"
#include "cantorfour/fourier.hpp"
#include "cantorfour/io.hpp"
#include "cantorfour/measure.hpp"
#include "cantorfour/precision.hpp"
#include "cantorfour/riesz.hpp"
#include "cantorfour/selection.hpp"

namespace cantorfour {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

double to_d(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

// ---------------------------------------------------------------- criterion 1
// Signed-sum enumeration vs a brute-force oracle.
void criterion_omega() {
    LacunarySequence seq({Frequency(1), Frequency(3), Frequency(9)});
    require(is_dissociate(seq, 3), "(1,3,9) should be dissociate");

    std::vector<long> brute;
    for (int e1 = -1; e1 <= 1; ++e1)
        for (int e2 = -1; e2 <= 1; ++e2)
            for (int e3 = -1; e3 <= 1; ++e3) brute.push_back(e1 + 3 * e2 + 9 * e3);
    std::sort(brute.begin(), brute.end());

    std::vector<OmegaPoint> pts = omega(seq, 3);
    require(pts.size() == 27, "omega size != 27");
    std::vector<long> got;
    for (const OmegaPoint& p : pts) got.push_back(p.value.get_si());
    std::sort(got.begin(), got.end());
    require(got == brute, "omega disagrees with brute force");
    for (std::size_t i = 1; i < got.size(); ++i) {
        require(got[i] != got[i - 1], "duplicate signed sum for a dissociate sequence");
    }
    require(got.front() == -13 && got.back() == 13, "range is not [-13, 13]");
    for (std::size_t i = 0; i < got.size(); ++i) {
        require(got[i] == -got[26 - i], "signed sums are not symmetric under negation");
    }

    LacunarySequence bad({Frequency(1), Frequency(2)});
    require(!is_dissociate(bad, 2), "(1,2) should not be dissociate");
    std::vector<OmegaPoint> bad_pts = omega(bad, 2);
    std::set<long> distinct;
    for (const OmegaPoint& p : bad_pts) distinct.insert(p.value.get_si());
    require(bad_pts.size() == 9 && distinct.size() < 9,
            "(1,2) enumeration should contain duplicate values");
}

// ---------------------------------------------------------------- criterion 2
Measure random_measure(std::mt19937_64& g) {
    auto u = [&g](std::uint64_t m) { return static_cast<long>(g() % m); };
    auto sgn = [&g]() { return (g() & 1) ? 1 : -1; };
    Rational c1(u(1 << 21) - (1 << 20), 1 << 20);
    Rational h1(77 + u(52), 1024);
    Rational h2(77 + u(52), 1024);
    Rational c2 = c1 + 1 + Rational(u(13) - 6, 64);
    std::vector<UniformPart> parts{
        {RationalInterval(CirclePoint(c1), h1), Rational(sgn() * (200 + u(800)), 1000)},
        {RationalInterval(CirclePoint(c2), h2), Rational(sgn() * (200 + u(800)), 1000)},
    };
    std::vector<Atom> atoms;
    long n_atoms = 1 + u(2);
    Rational p = c1 + Rational(1, 2) + Rational(u(1 << 16), 1 << 20);
    for (long a = 0; a < n_atoms; ++a) {
        atoms.push_back({CirclePoint(p), Rational(sgn() * (50 + u(250)), 1000)});
        p += Rational(1, 128) + Rational(u(1 << 10), 1 << 20);
    }
    return Measure(std::move(parts), std::move(atoms));
}

void criterion_closed_form() {
    std::mt19937_64 g(0xC04EC0FFEEULL);
    std::vector<Frequency> sweep;
    for (long n = -4096; n <= 4096; ++n) sweep.emplace_back(n);
    const std::size_t zero_index = 4096;

    std::size_t compares = 0;
    std::size_t skipped = 0;
    double worst_rel = 0;
    for (int mi = 0; mi < 100; ++mi) {
        Measure mu = random_measure(g);
        double tvd = to_d(total_variation(mu));
        std::vector<FourierCoefficient> vals = coefficients_batch(mu, sweep);

        // Frozen expectation at n = 0 plus the two structural properties the
        // closed form must satisfy at every frequency.
        Rational signed_mass(0);
        for (const UniformPart& p : mu.uniform_parts()) signed_mass += p.weight;
        for (const Atom& a : mu.atoms()) signed_mass += a.mass;
        std::complex<double> at0 = vals[zero_index].value;
        require(std::abs(at0.real() - 0.5 * to_d(signed_mass)) <= 1e-14 &&
                    std::abs(at0.imag()) <= 1e-18,
                "coefficient at frequency 0 is not half the signed mass");
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            std::complex<double> v = vals[i].value;
            require(std::abs(v) <= 0.5 * tvd * (1 + 1e-12) + 1e-15,
                    "modulus bound |v| <= tv/2 violated at measure " + std::to_string(mi));
            std::complex<double> w = vals[sweep.size() - 1 - i].value;  // frequency -n
            require(std::abs(v - std::conj(w)) <= 5e-16 * tvd,
                    "conjugate symmetry violated at measure " + std::to_string(mi));
        }

        // Stratified oracle agreement: a few small, medium, and large
        // frequencies per measure, signs randomized.
        std::vector<long> pick;
        pick.push_back(0);
        for (int i = 0; i < 4; ++i) pick.push_back(1 + static_cast<long>(g() % 16));
        for (int i = 0; i < 8; ++i) pick.push_back(17 + static_cast<long>(g() % 240));
        for (int i = 0; i < 12; ++i) pick.push_back(257 + static_cast<long>(g() % 3840));
        for (long& n : pick) {
            if (g() & 1) n = -n;
        }
        for (long n : pick) {
            std::complex<double> cf = vals[static_cast<std::size_t>(n + 4096)].value;
            std::complex<double> oracle = coefficient_oracle(mu, Frequency(n), 1e-15);
            double base = std::abs(oracle);
            if (base < 1e-6 * tvd) {
                ++skipped;  // relative error is ill-conditioned this close to a zero
                continue;
            }
            double rel = std::abs(cf - oracle) / base;
            worst_rel = std::max(worst_rel, rel);
            require(rel <= 1e-9, "closed form vs quadrature: relative error " +
                                     std::to_string(rel) + " at n = " + std::to_string(n) +
                                     ", measure " + std::to_string(mi));
            ++compares;
        }
    }
    require(compares >= 1500, "too few well-conditioned oracle comparisons: " +
                                  std::to_string(compares) + " (skipped " +
                                  std::to_string(skipped) + ")");
}

// ---------------------------------------------------------------- criterion 3
void criterion_riesz() {
    LacunarySequence seq({Frequency(1), Frequency(3), Frequency(9)});
    struct Case {
        long n;
        Rational expected;
    };
    // 13 = 1+3+9 and 5 = -1-3+9 are both represented (one pattern each); 14
    // exceeds every signed sum, so its coefficient vanishes.
    std::vector<Case> cases{{0, Rational(1, 2)},
                            {13, Rational(1, 16)},
                            {5, Rational(1, 16)},
                            {14, Rational(0)}};
    for (const Case& c : cases) {
        Rational exact = riesz_coefficient(seq, Frequency(c.n), 3);
        require(exact == c.expected, "closed-form product coefficient wrong at n = " +
                                         std::to_string(c.n));
        std::complex<double> quad = riesz_density_quadrature(seq, Frequency(c.n), 3);
        require(std::abs(quad - std::complex<double>(to_d(exact), 0)) <= 1e-8,
                "quadrature disagrees at n = " + std::to_string(c.n));
    }
}

// ---------------------------------------------------------------- criterion 4
void criterion_construction() {
    ConstructionParams params = generate_sequence(Rational(1, 2), BigInt(16), 2);
    require(params.N.size() == 2 && params.N[0] == 16, "N list malformed");
    require(params.N[1] == 4097, "N_2 != 4097");
    require(params.L[0] == 64, "L_1 != 64");
    require(params.L[1] == 262241, "L_2 != 262241");
    require(children_per_parent(params, 2) == 29, "M_2 != 29");
    require(growth_condition_holds(params, 1), "growth condition fails at k = 1");

    StageFamily d1 = build_stage(params, 1);
    StageFamily d2 = build_stage(params, 2);
    require(d1.intervals.size() == 16, "|D_1| != 16");
    require(d2.intervals.size() == 464, "|D_2| != 464");
    require(d2.parent_map.size() == d2.intervals.size(), "parent map size mismatch");

    for (std::size_t i = 0; i < d2.intervals.size(); ++i) {
        const RationalInterval& child = d2.intervals[i];
        const RationalInterval& parent = d1.intervals[d2.parent_map[i]];
        Rational gap = circle_gap(child.center, parent.center);
        require(gap + child.half_length <= parent.half_length,
                "child " + std::to_string(i) + " not contained in its parent");
    }
    require(window_property_holds(params, d1, 1), "window property fails at stage 1");
    require(window_property_holds(params, d2, 2), "window property fails at stage 2");
}

// ---------------------------------------------------------------- criterion 5
void criterion_perturbation() {
    ConstructionParams params = generate_sequence(Rational(1, 2), BigInt(16), 2);
    StageFamily d2 = build_stage(params, 2);

    std::vector<CirclePoint> points;
    points.reserve(10000);
    for (const RationalInterval& iv : d2.intervals) {
        points.emplace_back(CirclePoint(iv.lo()));
        points.emplace_back(CirclePoint(iv.hi()));
        points.emplace_back(iv.center);
    }
    std::mt19937_64 g(0x5EEDED5EEDULL);
    while (points.size() < 10000) {
        const RationalInterval& iv = d2.intervals[g() % d2.intervals.size()];
        Rational lambda(static_cast<long>(g() % 1025), 1024);
        points.emplace_back(CirclePoint(iv.lo() + iv.length() * lambda));
    }

    for (std::size_t j = 0; j < 2; ++j) {
        const BigInt& N = params.N[j];
        double rhs = perturbation_bound(Rational(1), N, params.delta, Round::Down);
        for (const CirclePoint& x : points) {
            Rational d = circle_distance(x, N);
            double lhs = chord_upper(Rational(N) * d);
            require(lhs <= rhs, "perturbation bound fails at stage " + std::to_string(j + 1));
        }
    }
}

// ---------------------------------------------------------------- criterion 6
std::vector<Frequency> powers_of_four() {
    std::vector<Frequency> c;
    for (long v = 4; v <= 4096; v *= 4) c.emplace_back(v);
    return c;
}

void criterion_selection_direct() {
    const std::vector<Frequency> expect{Frequency(16), Frequency(64), Frequency(256)};

    // Point mass at 0: every coefficient is exactly 1/2, so the chain must be
    // flat and every table entry must sit at 0.5.
    SelectionOptions opt;
    opt.mode = SelectionMode::Lemma1;
    opt.depth = 3;
    opt.delta = Rational(1);
    opt.candidates = powers_of_four();
    Measure point = dirac(CirclePoint(Rational(0)), Rational(1));
    SelectionCertificate cert = select(point, opt);
    require(cert.shift == 0, "point mass: shift should be 0");
    require(cert.frequencies == expect, "point mass: expected frequencies 16, 64, 256");
    require(cert.table.size() == 27, "point mass: table should have 27 entries");
    for (const CertificateEntry& e : cert.table) {
        require(std::abs(std::abs(e.value) - 0.5) <= 1e-12,
                "point mass: |coefficient| != 1/2 in the table");
    }
    require(cert.gamma_chain.size() == 3, "point mass: chain length != 3");
    for (double gam : cert.gamma_chain) {
        require(std::abs(gam - 0.5) <= 1e-12, "point mass: gamma chain not constant at 1/2");
    }

    // Equal mass on the four stage-6 windows of the 4^j family.
    ConstructionParams fam = explicit_family(Rational(1),
                                             {BigInt(4), BigInt(16), BigInt(64), BigInt(256),
                                              BigInt(1024), BigInt(4096)});
    Measure mu6 = stage_measure(fam, 6, StageMode::AllContained);
    SelectionCertificate cert2 = select(mu6, opt);
    require(cert2.frequencies == expect, "stage measure: expected frequencies 16, 64, 256");
    require(cert2.table.size() == 27, "stage measure: table should have 27 entries");
    for (std::size_t k = 1; k < cert2.gamma_chain.size(); ++k) {
        require(cert2.gamma_chain[k] >= cert2.gamma_chain[k - 1] / 2 * (1 - 1e-9),
                "stage measure: gamma chain drops below half");
    }
    require(cert2.lower_bound == cert2.gamma_chain.back() / 2,
            "stage measure: lower bound should be gamma/2");
    for (const CertificateEntry& e : cert2.table) {
        require(std::abs(e.value) >= cert2.lower_bound * (1 - 1e-9),
                "stage measure: table entry below the certified bound");
    }
}

// ---------------------------------------------------------------- criterion 7
void criterion_selection_truncated() {
    ConstructionParams fam = explicit_family(Rational(1),
                                             {BigInt(4), BigInt(16), BigInt(64), BigInt(256),
                                              BigInt(1024), BigInt(4096)});
    std::vector<Atom> atoms;
    for (long t = 1; t <= 6; ++t) {
        atoms.push_back({CirclePoint(Rational(t, 1 << 24)), Rational(1, 1L << t)});
    }
    Measure mu({}, std::move(atoms));

    SelectionOptions opt;
    opt.mode = SelectionMode::Lemma2;
    opt.depth = 2;
    opt.delta = Rational(1);
    opt.candidates = powers_of_four();
    opt.truncation_params = fam;
    SelectionCertificate cert = select(mu, opt);

    require(cert.shift == 0, "shift should be 0");
    require(std::abs(cert.gamma_chain.at(0) - 63.0 / 128.0) <= 1e-12,
            "gamma_0 should be 63/128");
    const std::vector<Frequency> expect{Frequency(256), Frequency(1024)};
    require(cert.frequencies == expect, "expected frequencies 256, 1024");
    const std::vector<Rational> levels{Rational(3), Rational(3)};
    require(cert.truncation_levels == levels, "expected truncation levels 3, 3");
    require(std::abs(cert.lower_bound - cert.gamma_chain.back() / 6) <= 1e-15,
            "lower bound should be gamma/6");
    require(cert.table.size() == 9, "table should have 9 entries");
    for (const CertificateEntry& e : cert.table) {
        require(std::abs(e.value) >= cert.lower_bound * (1 - 1e-9),
                "table entry on the original measure below the certified bound");
    }
}

// ---------------------------------------------------------------- criterion 8
void criterion_dimension() {
    ConstructionParams params = generate_sequence(Rational(1, 2), BigInt(16), 2);
    Measure mu2 = stage_measure(params, 2, StageMode::Pruned);
    Rational finest = Rational(1) / Rational(params.L[1]);

    for (const Rational& s : {Rational(1, 10), Rational(1, 4), Rational(2, 5)}) {
        DimensionReport rep = mass_ratio_audit(mu2, s, finest, &params);
        require(rep.passed, "mass ratio exceeds the stage constant at s = " + s.get_str());
        for (const ScaleRow& row : rep.per_scale) {
            require(row.theoretical.has_value(), "missing stage constant at a scanned scale");
            require(row.pass, "scale " + row.scale.get_str() + " fails at s = " + s.get_str());
        }
        std::vector<double> cs = stage_constants(params, s, 2);
        require(cs[0] > cs[1], "stage constants should decrease, s = " + s.get_str());
    }

    StageFamily d2 = build_stage(params, 2);
    long boxes = box_count(d2, finest);
    require(boxes == 928, "box count at 1/L_2 should be 928, got " + std::to_string(boxes));
    double est = dimension_estimate(params, d2);
    require(est >= 0.44 && est <= 0.55, "dimension estimate outside [0.44, 0.55]");
    // Pinned from the exact count: log(928)/log(262241).
    require(est >= 0.547 && est <= 0.548, "dimension estimate drifted from log 928 / log L_2");
}

// ---------------------------------------------------------------- criterion 9
std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "missing output file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism(const std::string& cli_path) {
    require(!cli_path.empty(), "path to the command-line binary was not provided");

    // In-process: the parallel map must be bit-identical to the serial loop.
    Measure mu({{RationalInterval(CirclePoint(Rational(0)), Rational(1, 8)), Rational(3, 4)}},
               {{CirclePoint(Rational(1, 3)), Rational(1, 4)}});
    std::vector<Frequency> ns;
    for (long n = -512; n <= 512; ++n) ns.emplace_back(n);
    std::vector<FourierCoefficient> par = coefficients_batch(mu, ns);
    std::vector<FourierCoefficient> ser = coefficients_batch_serial(mu, ns);
    require(par.size() == ser.size(), "batch sizes differ");
    for (std::size_t i = 0; i < par.size(); ++i) {
        require(std::memcmp(&par[i].value, &ser[i].value, sizeof par[i].value) == 0,
                "batch and serial coefficients differ in bit pattern");
    }

    char tmpl[] = "/tmp/accept9.XXXXXX";
    require(mkdtemp(tmpl) != nullptr, "cannot create temp dir");
    std::string dir = tmpl;
    io::write_json(dir + "/m.json", io::to_json(mu));

    auto run = [&cli_path](const std::string& args) {
        std::string cmd = "'" + cli_path + "' " + args + " >/dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        require(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0, "command failed: " + args);
    };
    struct Job {
        std::string args;  // with %s for the output path
        std::string name;
    };
    std::vector<Job> jobs{
        {"fourier --measure " + dir + "/m.json --min -256 --max 256 --out ", "fourier.csv"},
        {"omega --terms 1,3,9 --depth 3 --out ", "omega.csv"},
        {"gen-seq --alpha 1/2 --n1 16 --depth 2 --out ", "params.json"},
    };
    for (const Job& job : jobs) {
        // Re-run the *identical* invocation; artifacts embed the command
        // line, so the comparison must capture the first run before the
        // second overwrites it.
        std::string out = dir + "/" + job.name;
        run(job.args + out);
        std::string first = read_file(out);
        run(job.args + out);
        require(first == read_file(out), "re-run of \"" + job.args + "\" differs");
        require(!first.empty(), "empty artifact from \"" + job.args + "\"");
    }
    std::filesystem::remove_all(dir);
}

}  // namespace

int run_acceptance(const std::string& cli_path) {
    struct Entry {
        int id;
        const char* label;
        double budget_s;  // 0 = no stated budget
        std::function<void()> fn;
    };
    const std::vector<Entry> entries{
        {1, "signed-sum enumeration vs brute force", 1.0, criterion_omega},
        {2, "closed-form coefficients vs quadrature oracle", 30.0, criterion_closed_form},
        {3, "product coefficients (0, 5, 13, unrepresented 14)", 0.0, criterion_riesz},
        {4, "construction constants and containment, exact", 5.0, criterion_construction},
        {5, "perturbation bound over sampled support points", 0.0, criterion_perturbation},
        {6, "selection certificate, direct mode", 60.0, criterion_selection_direct},
        {7, "selection certificate, truncated mode", 0.0, criterion_selection_truncated},
        {8, "mass-ratio audit and box-count dimension", 60.0, criterion_dimension},
        {9, "byte-identical reruns and batch determinism", 0.0,
         [&cli_path]() { criterion_determinism(cli_path); }},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        auto t0 = std::chrono::steady_clock::now();
        std::string err;
        try {
            e.fn();
        } catch (const std::exception& ex) {
            err = ex.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (err.empty() && e.budget_s > 0 && dt > e.budget_s) {
            err = "runtime budget exceeded";
        }
        std::printf("[%s] criterion %d: %s (%.2f s", err.empty() ? "PASS" : "FAIL", e.id, e.label,
                    dt);
        if (e.budget_s > 0) {
            std::printf(", budget %.0f s", e.budget_s);
        }
        std::printf(")\n");
        if (!err.empty()) {
            std::printf("       %s\n", err.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all 9 criteria passed\n");
    } else {
        std::printf("%d criteria FAILED\n", failures);
    }
    return failures;
}

}  // namespace cantorfour
