#include "cantorfour/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cantorfour/errors.hpp"

namespace cantorfour::io {

namespace {

std::int64_t to_i64(const Frequency& f) {
    if (!f.fits_slong_p()) {
        throw std::invalid_argument("frequency exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(f.get_si());
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw std::invalid_argument(std::string("missing field: ") + key);
    }
    return *it;
}

BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("expected integer or decimal string");
}

json interval_to_json(const RationalInterval& iv) {
    json j;
    j["center"] = to_json(iv.center.value());
    j["half_length"] = to_json(iv.half_length);
    return j;
}

RationalInterval interval_from_json(const json& j) {
    return RationalInterval(CirclePoint(rational_from_json(field(j, "center"))),
                            rational_from_json(field(j, "half_length")));
}

}  // namespace

json to_json(const Rational& q) {
    json j;
    j["num"] = q.get_num().get_str();
    j["den"] = q.get_den().get_str();
    return j;
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (!j.is_object()) throw std::invalid_argument("expected rational object");
    BigInt num = bigint_from_json(field(j, "num"));
    BigInt den = bigint_from_json(field(j, "den"));
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

json to_json(const Measure& mu) {
    json parts = json::array();
    for (const UniformPart& p : mu.uniform_parts()) {
        json jp = interval_to_json(p.interval);
        jp["weight"] = to_json(p.weight);
        parts.push_back(std::move(jp));
    }
    json atoms = json::array();
    for (const Atom& a : mu.atoms()) {
        json ja;
        ja["point"] = to_json(a.point.value());
        ja["mass"] = to_json(a.mass);
        atoms.push_back(std::move(ja));
    }
    json j;
    j["uniform_parts"] = std::move(parts);
    j["atoms"] = std::move(atoms);
    return j;
}

Measure measure_from_json(const json& j) {
    std::vector<UniformPart> parts;
    if (j.contains("uniform_parts")) {
        for (const json& jp : j.at("uniform_parts")) {
            parts.push_back({interval_from_json(jp), rational_from_json(field(jp, "weight"))});
        }
    }
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        for (const json& ja : j.at("atoms")) {
            atoms.push_back({CirclePoint(rational_from_json(field(ja, "point"))),
                             rational_from_json(field(ja, "mass"))});
        }
    }
    return Measure(std::move(parts), std::move(atoms));
}

json to_json(const ConstructionParams& params) {
    json n = json::array();
    for (const BigInt& v : params.N) n.push_back(v.get_str());
    json l = json::array();
    for (const BigInt& v : params.L) l.push_back(v.get_str());
    json j;
    j["alpha"] = to_json(params.alpha);
    j["delta"] = to_json(params.delta);
    j["N"] = std::move(n);
    j["L"] = std::move(l);
    return j;
}

ConstructionParams params_from_json(const json& j) {
    std::vector<BigInt> n;
    for (const json& v : field(j, "N")) n.push_back(bigint_from_json(v));
    ConstructionParams params = explicit_family(rational_from_json(field(j, "delta")), std::move(n));
    if (j.contains("alpha")) {
        Rational alpha = rational_from_json(j.at("alpha"));
        if (alpha != params.alpha) throw std::invalid_argument("alpha inconsistent with delta");
    }
    if (j.contains("L")) {
        const json& l = j.at("L");
        if (l.size() != params.L.size()) throw std::invalid_argument("inconsistent L list");
        for (std::size_t i = 0; i < params.L.size(); ++i) {
            if (bigint_from_json(l[i]) != params.L[i]) {
                throw std::invalid_argument("inconsistent L list");
            }
        }
    }
    return params;
}

json to_json(const StageFamily& family) {
    json intervals = json::array();
    for (const RationalInterval& iv : family.intervals) intervals.push_back(interval_to_json(iv));
    json parents = json::array();
    for (std::size_t p : family.parent_map) parents.push_back(p);
    json j;
    j["stage"] = family.stage;
    j["intervals"] = std::move(intervals);
    j["parents"] = std::move(parents);
    return j;
}

json to_json(const TruncationSet& set) {
    json intervals = json::array();
    for (const RationalInterval& iv : set.intervals) intervals.push_back(interval_to_json(iv));
    json j;
    j["t"] = to_json(set.t);
    j["level"] = set.J;
    j["intervals"] = std::move(intervals);
    return j;
}

json to_json(const LacunarySequence& seq) {
    json terms = json::array();
    for (const Frequency& t : seq.terms()) terms.push_back(t.get_str());
    json coeffs = json::array();
    for (const Rational& a : seq.coefficients()) coeffs.push_back(to_json(a));
    json j;
    j["terms"] = std::move(terms);
    j["coefficients"] = std::move(coeffs);
    return j;
}

LacunarySequence sequence_from_json(const json& j) {
    std::vector<Frequency> terms;
    for (const json& v : field(j, "terms")) terms.push_back(bigint_from_json(v));
    if (!j.contains("coefficients") || j.at("coefficients").empty()) {
        return LacunarySequence(std::move(terms));
    }
    std::vector<Rational> coeffs;
    for (const json& v : j.at("coefficients")) coeffs.push_back(rational_from_json(v));
    return LacunarySequence(std::move(terms), std::move(coeffs));
}

json to_json(const SelectionCertificate& cert) {
    json freqs = json::array();
    for (const Frequency& f : cert.frequencies) freqs.push_back(to_i64(f));
    json chain = json::array();
    for (double g : cert.gamma_chain) chain.push_back(g);
    json levels = json::array();
    for (const Rational& t : cert.truncation_levels) levels.push_back(to_json(t));
    json table = json::array();
    for (const CertificateEntry& e : cert.table) {
        json je;
        je["eps"] = e.eps.eps;
        je["frequency"] = to_i64(e.freq);
        je["re"] = e.value.real();
        je["im"] = e.value.imag();
        je["abs"] = std::abs(e.value);
        table.push_back(std::move(je));
    }
    json j;
    j["shift"] = to_i64(cert.shift);
    j["frequencies"] = std::move(freqs);
    j["gamma_chain"] = std::move(chain);
    j["lower_bound"] = cert.lower_bound;
    j["truncation_levels"] = std::move(levels);
    j["table"] = std::move(table);
    return j;
}

json to_json(const DimensionReport& report) {
    json rows = json::array();
    for (const ScaleRow& row : report.per_scale) {
        json jr;
        jr["scale"] = to_json(row.scale);
        jr["max_ratio"] = row.max_ratio;
        if (row.theoretical) jr["theoretical"] = *row.theoretical;
        jr["pass"] = row.pass;
        jr["extrapolated"] = row.bracket_extrapolated;
        if (row.achiever) jr["window"] = interval_to_json(*row.achiever);
        rows.push_back(std::move(jr));
    }
    json boxes = json::array();
    for (const auto& [scale, count] : report.box_counts) {
        json jb;
        jb["scale"] = to_json(scale);
        jb["count"] = count;
        boxes.push_back(std::move(jb));
    }
    json j;
    j["s"] = to_json(report.s);
    j["empirical_max_ratio"] = report.empirical_max_ratio;
    if (report.theoretical_c) j["theoretical_c"] = *report.theoretical_c;
    j["passed"] = report.passed;
    j["per_scale"] = std::move(rows);
    j["box_counts"] = std::move(boxes);
    if (report.dimension_estimate) j["dimension_estimate"] = *report.dimension_estimate;
    return j;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw ConfigError("write failed: " + path);
}

std::string coefficients_csv(const std::vector<FourierCoefficient>& coeffs) {
    std::ostringstream out;
    out << "# fourier coefficients of a rational measure\n";
    out << "n,re,im,abs\n";
    for (const FourierCoefficient& c : coeffs) {
        out << c.frequency.get_str() << ',' << format_double(c.value.real()) << ','
            << format_double(c.value.imag()) << ',' << format_double(std::abs(c.value)) << '\n';
    }
    return out.str();
}

std::string omega_csv(const std::vector<OmegaPoint>& points, std::size_t depth) {
    std::ostringstream out;
    out << "# signed sums of a lacunary sequence\n";
    out << "value";
    for (std::size_t j = 1; j <= depth; ++j) out << ",eps_" << j;
    out << '\n';
    for (const OmegaPoint& p : points) {
        out << p.value.get_str();
        for (int e : p.pattern.eps) out << ',' << e;
        out << '\n';
    }
    return out.str();
}

std::string certificate_csv(const SelectionCertificate& cert) {
    std::ostringstream out;
    out << "# selected frequencies: ";
    for (std::size_t i = 0; i < cert.frequencies.size(); ++i) {
        if (i) out << ' ';
        out << cert.frequencies[i].get_str();
    }
    out << "\n# shift: " << cert.shift.get_str();
    out << "\n# lower bound: " << format_double(cert.lower_bound) << '\n';
    out << "frequency,re,im,abs";
    for (std::size_t j = 1; j <= cert.frequencies.size(); ++j) out << ",eps_" << j;
    out << '\n';
    for (const CertificateEntry& e : cert.table) {
        out << e.freq.get_str() << ',' << format_double(e.value.real()) << ','
            << format_double(e.value.imag()) << ',' << format_double(std::abs(e.value));
        for (int s : e.eps.eps) out << ',' << s;
        out << '\n';
    }
    return out.str();
}

std::string dimension_csv(const DimensionReport& report) {
    std::ostringstream out;
    out << "# mass ratio audit at exponent s = " << report.s.get_str() << '\n';
    out << "scale,max_ratio,theoretical,pass,extrapolated\n";
    for (const ScaleRow& row : report.per_scale) {
        out << row.scale.get_str() << ',' << format_double(row.max_ratio) << ',';
        if (row.theoretical) out << format_double(*row.theoretical);
        out << ',' << (row.pass ? 1 : 0) << ',' << (row.bracket_extrapolated ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace cantorfour::io
