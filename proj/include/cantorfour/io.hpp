#pragma once

#include <string>
#include <vector>

#include "cantorfour/construction.hpp"
#include "cantorfour/dimension.hpp"
#include "cantorfour/fourier.hpp"
#include "cantorfour/measure.hpp"
#include "cantorfour/riesz.hpp"
#include "cantorfour/selection.hpp"
#include "json.hpp"

namespace cantorfour::io {

using json = nlohmann::ordered_json;

// Rationals are serialized as {"num": "...", "den": "..."} with decimal
// strings so arbitrary precision survives the round trip.
json to_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const Measure& mu);
Measure measure_from_json(const json& j);

json to_json(const ConstructionParams& params);
ConstructionParams params_from_json(const json& j);

json to_json(const StageFamily& family);
json to_json(const TruncationSet& set);

json to_json(const LacunarySequence& seq);
LacunarySequence sequence_from_json(const json& j);

// Frequencies are emitted as 64-bit JSON integers; throws
// std::invalid_argument if one does not fit.
json to_json(const SelectionCertificate& cert);

json to_json(const DimensionReport& report);

// Shortest round-trip is not what we want in CSV: %.17g guarantees exact
// double recovery and byte-identical reruns.
std::string format_double(double value);

void write_json(const std::string& path, const json& j);
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

std::string coefficients_csv(const std::vector<FourierCoefficient>& coeffs);
std::string omega_csv(const std::vector<OmegaPoint>& points, std::size_t depth);
std::string certificate_csv(const SelectionCertificate& cert);
std::string dimension_csv(const DimensionReport& report);

}  // namespace cantorfour::io
