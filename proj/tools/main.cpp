// Command-line front end: exact measures on the circle, their Fourier
// coefficients at arbitrary frequencies, nested grid-interval families,
// frequency-selection certificates, and mass-distribution audits.
//
// Exit codes: 0 success, 1 a mathematical guarantee failed to verify (or an
// oracle ran out of budget), 2 bad input.

#include <omp.h>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cantorfour/acceptance.hpp"
#include "cantorfour/construction.hpp"
#include "cantorfour/dimension.hpp"
#include "cantorfour/errors.hpp"
#include "cantorfour/fourier.hpp"
#include "cantorfour/io.hpp"
#include "cantorfour/measure.hpp"
#include "cantorfour/precision.hpp"
#include "cantorfour/riesz.hpp"
#include "cantorfour/selection.hpp"

namespace {

using namespace cantorfour;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<Frequency> parse_terms(const std::string& s) {
    std::vector<Frequency> out;
    for (const std::string& tok : split_list(s)) out.emplace_back(tok);
    if (out.empty()) throw ConfigError("empty term list");
    return out;
}

Measure load_measure(const std::string& path) {
    return io::measure_from_json(io::read_json(path));
}

StageMode parse_mode(const std::string& mode) {
    if (mode == "pruned") return StageMode::Pruned;
    if (mode == "all") return StageMode::AllContained;
    throw ConfigError("mode must be 'pruned' or 'all'");
}

// Every artifact file records the invocation that produced it, so results
// stay attributable after they leave the working directory.  The string is
// deterministic, keeping reruns byte-identical.
io::json with_provenance(io::json j, const std::string& invocation) {
    j["_provenance"] = invocation;
    return j;
}

std::string csv_with_provenance(const std::string& csv, const std::string& invocation) {
    return "# command: " + invocation + "\n" + csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact singular measures on the circle and their transforms"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (default: runtime choice)");

    // gen-seq
    auto* gen = app.add_subcommand("gen-seq", "generate construction parameters");
    std::string g_alpha = "1/2", g_n1 = "16", g_out;
    std::size_t g_depth = 2;
    gen->add_option("--alpha", g_alpha, "dimension parameter in (0,1), e.g. 1/2");
    gen->add_option("--n1", g_n1, "first grid order (integer >= 4)");
    gen->add_option("--depth", g_depth, "number of stages");
    gen->add_option("--out", g_out, "output JSON path");

    // build
    auto* build = app.add_subcommand("build", "materialize a stage family");
    std::string b_params, b_mode = "pruned", b_out, b_measure_out;
    std::size_t b_stage = 1;
    build->add_option("--params", b_params, "parameters JSON")->required();
    build->add_option("--stage", b_stage, "stage index k >= 1");
    build->add_option("--mode", b_mode, "pruned | all");
    build->add_option("--out", b_out, "family JSON path");
    build->add_option("--measure-out", b_measure_out, "equal-mass stage measure JSON path");

    // fourier
    auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of a measure");
    std::string f_measure, f_out;
    long f_min = 0, f_max = 0;
    std::vector<std::string> f_freqs;
    bool f_serial = false;
    double f_check = 0;
    fourier->add_option("--measure", f_measure, "measure JSON")->required();
    fourier->add_option("--min", f_min, "lowest frequency");
    fourier->add_option("--max", f_max, "highest frequency");
    fourier->add_option("--freq", f_freqs, "explicit frequencies (decimal, any size)");
    fourier->add_flag("--serial", f_serial, "force the serial evaluation path");
    fourier->add_option("--check-oracle", f_check,
                        "verify each value against the quadrature oracle at this tolerance");
    fourier->add_option("--out", f_out, "output CSV path");

    // omega
    auto* om = app.add_subcommand("omega", "signed sums of a lacunary sequence");
    std::string o_terms, o_coeffs, o_out;
    std::size_t o_depth = 0;
    om->add_option("--terms", o_terms, "comma-separated terms, e.g. 1,3,9")->required();
    om->add_option("--coefficients", o_coeffs, "per-term amplitudes (rationals)");
    om->add_option("--depth", o_depth, "prefix length (default: all terms)");
    om->add_option("--out", o_out, "output CSV path");

    // riesz
    auto* rz = app.add_subcommand("riesz", "product coefficient at one frequency");
    std::string r_terms, r_coeffs, r_freq = "0";
    std::size_t r_depth = 0;
    bool r_quad = false;
    rz->add_option("--terms", r_terms, "comma-separated terms")->required();
    rz->add_option("--coefficients", r_coeffs, "per-term amplitudes (rationals)");
    rz->add_option("--freq", r_freq, "frequency n");
    rz->add_option("--depth", r_depth, "prefix length (default: all terms)");
    rz->add_flag("--quad", r_quad, "cross-check against density quadrature");

    // select
    auto* sel = app.add_subcommand("select", "inductive frequency selection");
    std::string s_measure, s_mode = "lemma1", s_delta = "1", s_candidates, s_params, s_out, s_csv;
    std::size_t s_depth = 1;
    std::optional<long> s_shift;
    sel->add_option("--measure", s_measure, "measure JSON")->required();
    sel->add_option("--mode", s_mode, "lemma1 | lemma2");
    sel->add_option("--depth", s_depth, "number of frequencies to select");
    sel->add_option("--delta", s_delta, "decay exponent (rational)");
    sel->add_option("--candidates", s_candidates, "comma-separated candidate pool")->required();
    sel->add_option("--params", s_params, "construction parameters JSON (lemma2)");
    sel->add_option("--shift", s_shift, "force the base shift instead of searching");
    sel->add_option("--out", s_out, "certificate JSON path");
    sel->add_option("--csv", s_csv, "certificate table CSV path");

    // dim-audit
    auto* dim = app.add_subcommand("dim-audit", "mass-ratio and box-count audit");
    std::string d_measure, d_s = "2/5", d_finest, d_params, d_mode = "pruned", d_out, d_csv;
    std::size_t d_stage = 0;
    bool d_serial = false;
    dim->add_option("--measure", d_measure, "measure JSON")->required();
    dim->add_option("--s", d_s, "dimension exponent (rational in (0,1])");
    dim->add_option("--finest", d_finest, "finest window length (rational)")->required();
    dim->add_option("--params", d_params, "construction parameters JSON");
    dim->add_option("--stage", d_stage, "also box-count the stage-k family (needs --params)");
    dim->add_option("--mode", d_mode, "family mode for --stage: pruned | all");
    dim->add_flag("--serial", d_serial, "force the serial audit path");
    dim->add_option("--out", d_out, "report JSON path");
    dim->add_option("--csv", d_csv, "per-scale CSV path");

    // self-test
    auto* st = app.add_subcommand("self-test", "run the full verification gate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads > 0) omp_set_num_threads(threads);

    std::string invocation;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) invocation += ' ';
        invocation += argv[i];
    }

    try {
        if (gen->parsed()) {
            ConstructionParams params =
                generate_sequence(parse_rational(g_alpha), BigInt(g_n1), g_depth);
            for (std::size_t j = 0; j < params.depth(); ++j) {
                std::cout << "N_" << (j + 1) << " = " << params.N[j].get_str() << "   L_"
                          << (j + 1) << " = " << params.L[j].get_str() << "\n";
            }
            if (!g_out.empty()) io::write_json(g_out, with_provenance(io::to_json(params), invocation));
        } else if (build->parsed()) {
            ConstructionParams params = io::params_from_json(io::read_json(b_params));
            StageFamily fam = build_stage(params, b_stage, parse_mode(b_mode));
            std::cout << "stage " << fam.stage << ": " << fam.intervals.size()
                      << " intervals\n";
            if (!b_out.empty()) io::write_json(b_out, with_provenance(io::to_json(fam), invocation));
            if (!b_measure_out.empty()) {
                io::write_json(
                    b_measure_out,
                    with_provenance(io::to_json(stage_measure(params, b_stage, parse_mode(b_mode))),
                                    invocation));
            }
        } else if (fourier->parsed()) {
            Measure mu = load_measure(f_measure);
            std::vector<Frequency> ns;
            if (!f_freqs.empty()) {
                for (const std::string& s : f_freqs) ns.emplace_back(s);
            } else {
                if (f_min > f_max) throw ConfigError("--min exceeds --max");
                if (f_max - f_min > 10'000'000) throw ConfigError("frequency range too large");
                for (long n = f_min; n <= f_max; ++n) ns.emplace_back(n);
            }
            std::vector<FourierCoefficient> vals =
                f_serial ? coefficients_batch_serial(mu, ns) : coefficients_batch(mu, ns);
            if (f_check > 0) {
                for (const FourierCoefficient& c : vals) {
                    std::complex<double> oracle = coefficient_oracle(mu, c.frequency, f_check);
                    if (std::abs(c.value - oracle) >
                        f_check + 1e-9 * std::max(std::abs(c.value), std::abs(oracle))) {
                        throw VerificationError("closed form disagrees with the oracle at n = " +
                                                c.frequency.get_str());
                    }
                }
                std::cout << "oracle check passed for " << vals.size() << " frequencies\n";
            }
            if (!f_out.empty()) {
                io::write_text(f_out, csv_with_provenance(io::coefficients_csv(vals), invocation));
            } else {
                std::cout << io::coefficients_csv(vals);
            }
        } else if (om->parsed()) {
            std::vector<Frequency> terms = parse_terms(o_terms);
            std::size_t depth = o_depth == 0 ? terms.size() : o_depth;
            LacunarySequence seq =
                o_coeffs.empty()
                    ? LacunarySequence(std::move(terms))
                    : LacunarySequence(std::move(terms), [&o_coeffs] {
                          std::vector<Rational> cs;
                          for (const std::string& t : split_list(o_coeffs))
                              cs.push_back(parse_rational(t));
                          return cs;
                      }());
            std::cout << "dissociate to depth " << depth << ": "
                      << (is_dissociate(seq, depth) ? "yes" : "no") << "\n";
            std::vector<OmegaPoint> pts = omega(seq, depth);
            if (!o_out.empty()) {
                io::write_text(o_out, csv_with_provenance(io::omega_csv(pts, depth), invocation));
            } else {
                std::cout << io::omega_csv(pts, depth);
            }
        } else if (rz->parsed()) {
            std::vector<Frequency> terms = parse_terms(r_terms);
            std::size_t depth = r_depth == 0 ? terms.size() : r_depth;
            LacunarySequence seq =
                r_coeffs.empty()
                    ? LacunarySequence(std::move(terms))
                    : LacunarySequence(std::move(terms), [&r_coeffs] {
                          std::vector<Rational> cs;
                          for (const std::string& t : split_list(r_coeffs))
                              cs.push_back(parse_rational(t));
                          return cs;
                      }());
            Frequency n(r_freq);
            Rational exact = riesz_coefficient(seq, n, depth);
            std::cout << "coefficient(" << n.get_str() << ") = " << exact.get_str() << " = "
                      << io::format_double(mpq_get_d(exact.get_mpq_t())) << "\n";
            if (r_quad) {
                std::complex<double> q = riesz_density_quadrature(seq, n, depth);
                std::cout << "quadrature = " << io::format_double(q.real()) << " + "
                          << io::format_double(q.imag()) << "i  (|diff| = "
                          << io::format_double(std::abs(q - std::complex<double>(
                                                            mpq_get_d(exact.get_mpq_t()), 0)))
                          << ")\n";
            }
        } else if (sel->parsed()) {
            Measure mu = load_measure(s_measure);
            SelectionOptions opt;
            if (s_mode == "lemma1") {
                opt.mode = SelectionMode::Lemma1;
            } else if (s_mode == "lemma2") {
                opt.mode = SelectionMode::Lemma2;
            } else {
                throw ConfigError("mode must be 'lemma1' or 'lemma2'");
            }
            opt.depth = s_depth;
            opt.delta = parse_rational(s_delta);
            for (const std::string& t : split_list(s_candidates))
                opt.candidates.emplace_back(t);
            if (!s_params.empty()) {
                opt.truncation_params = io::params_from_json(io::read_json(s_params));
            }
            if (opt.mode == SelectionMode::Lemma2 && !opt.truncation_params) {
                throw ConfigError("lemma2 mode needs --params");
            }
            if (s_shift) opt.force_shift = Frequency(*s_shift);
            SelectionCertificate cert = select(mu, opt);
            std::cout << "shift = " << cert.shift.get_str() << "\nfrequencies =";
            for (const Frequency& f : cert.frequencies) std::cout << ' ' << f.get_str();
            std::cout << "\ngamma chain =";
            for (double g : cert.gamma_chain) std::cout << ' ' << io::format_double(g);
            std::cout << "\nlower bound = " << io::format_double(cert.lower_bound) << "\n";
            if (!s_out.empty()) io::write_json(s_out, with_provenance(io::to_json(cert), invocation));
            if (!s_csv.empty())
                io::write_text(s_csv, csv_with_provenance(io::certificate_csv(cert), invocation));
        } else if (dim->parsed()) {
            Measure mu = load_measure(d_measure);
            std::optional<ConstructionParams> params;
            if (!d_params.empty()) params = io::params_from_json(io::read_json(d_params));
            DimensionReport rep = mass_ratio_audit(mu, parse_rational(d_s),
                                                   parse_rational(d_finest),
                                                   params ? &*params : nullptr, !d_serial);
            if (d_stage > 0) {
                if (!params) throw ConfigError("--stage needs --params");
                StageFamily fam = build_stage(*params, d_stage, parse_mode(d_mode));
                for (std::size_t j = 0; j < d_stage; ++j) {
                    Rational scale = Rational(1) / Rational(params->L[j]);
                    rep.box_counts.emplace_back(scale, box_count(fam, scale));
                }
                rep.dimension_estimate = dimension_estimate(*params, fam);
            }
            std::cout << "empirical max ratio = " << io::format_double(rep.empirical_max_ratio)
                      << "\n";
            if (rep.dimension_estimate) {
                std::cout << "box-count dimension estimate = "
                          << io::format_double(*rep.dimension_estimate) << "\n";
            }
            std::cout << "audit " << (rep.passed ? "passed" : "FAILED") << "\n";
            if (!d_out.empty()) io::write_json(d_out, with_provenance(io::to_json(rep), invocation));
            if (!d_csv.empty())
                io::write_text(d_csv, csv_with_provenance(io::dimension_csv(rep), invocation));
            if (params && !rep.passed) {
                throw VerificationError("mass ratio exceeds the theoretical constant");
            }
        } else if (st->parsed()) {
            std::string self = std::filesystem::read_symlink("/proc/self/exe").string();
            return run_acceptance(self) == 0 ? 0 : 1;
        }
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const OracleInfeasible& e) {
        std::cerr << "oracle infeasible: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
