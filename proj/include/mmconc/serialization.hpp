#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mmconc/certify.hpp"
#include "mmconc/mmspace.hpp"
#include "mmconc/sphere_sampling.hpp"

namespace mmconc::io {

/// l^r exponents serialize as plain numbers, with the string "inf" for the
/// sup norm (JSON has no infinity literal).
nlohmann::json encode_exponent(double r);
double decode_exponent(const nlohmann::json& j);

/// Deterministic shortest-round-trip decimal for CSV cells.
std::string format_double(double v);

nlohmann::json to_json(const FiniteMMSpace& X);
FiniteMMSpace mmspace_from_json(const nlohmann::json& j);
FiniteMMSpace load_mmspace_json(const std::string& path);
/// CSV pair: square distance matrix (one row per line) plus a weights file.
FiniteMMSpace load_mmspace_csv(const std::string& dist_path, const std::string& weights_path);

nlohmann::json to_json(const WeightedCloud& nu);
WeightedCloud cloud_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SphereSampleSet& S);
SphereSampleSet sample_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const certify::SuiteReport& report);
void write_suite_csv(std::ostream& out, const certify::SuiteReport& report);

} // namespace mmconc::io
