#include "mmconc/serialization.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmconc::io {

nlohmann::json encode_exponent(double r) {
  if (std::isinf(r)) return "inf";
  return r;
}

double decode_exponent(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw std::invalid_argument("exponent: expected a number or \"inf\"");
  }
  return j.get<double>();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json to_json(const FiniteMMSpace& X) {
  nlohmann::json dist = nlohmann::json::array();
  for (int i = 0; i < X.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < X.n; ++j) row.push_back(X.d(i, j));
    dist.push_back(std::move(row));
  }
  return {{"dist", std::move(dist)}, {"weights", X.weights}};
}

FiniteMMSpace mmspace_from_json(const nlohmann::json& j) {
  if (!j.contains("dist") || !j.contains("weights"))
    throw std::invalid_argument("mm-space JSON requires \"dist\" and \"weights\"");
  const auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
  auto weights = j.at("weights").get<std::vector<double>>();
  return FiniteMMSpace::create(rows, std::move(weights));
}

FiniteMMSpace load_mmspace_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mm-space JSON file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return mmspace_from_json(j);
}

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& path) {
  std::vector<double> out;
  std::string token;
  for (char c : text) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) {
        try {
          out.push_back(std::stod(token));
        } catch (const std::exception&) {
          throw std::runtime_error("bad numeric token '" + token + "' in '" + path + "'");
        }
        token.clear();
      }
    } else {
      token += c;
    }
  }
  if (!token.empty()) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::runtime_error("bad numeric token '" + token + "' in '" + path + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

FiniteMMSpace load_mmspace_csv(const std::string& dist_path, const std::string& weights_path) {
  std::vector<std::vector<double>> rows;
  {
    std::ifstream in(dist_path);
    if (!in) throw std::runtime_error("cannot open distance CSV '" + dist_path + "'");
    std::string line;
    while (std::getline(in, line)) {
      std::vector<double> row = parse_numbers(line, dist_path);
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  std::vector<double> weights = parse_numbers(read_file(weights_path), weights_path);
  return FiniteMMSpace::create(rows, std::move(weights));
}

nlohmann::json to_json(const WeightedCloud& nu) {
  nlohmann::json j;
  if (nu.target == WeightedCloud::Target::RealLine) {
    j["target_kind"] = "real-line";
  } else {
    j["target_kind"] = "coordinate-space";
    j["k"] = nu.dim;
    j["r"] = encode_exponent(nu.r);
  }
  j["points"] = nu.points;
  j["weights"] = nu.weights;
  j["total_mass"] = nu.total_mass;
  return j;
}

WeightedCloud cloud_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("target_kind").get<std::string>();
  auto weights = j.at("weights").get<std::vector<double>>();
  WeightedCloud out;
  if (kind == "real-line") {
    const auto pts = j.at("points").get<std::vector<std::vector<double>>>();
    std::vector<double> values;
    values.reserve(pts.size());
    for (const auto& pt : pts) {
      if (pt.size() != 1)
        throw std::invalid_argument("real-line cloud points must be 1-dimensional");
      values.push_back(pt[0]);
    }
    out = WeightedCloud::real_line(std::move(values), std::move(weights));
  } else if (kind == "coordinate-space") {
    out = WeightedCloud::coordinate_space(j.at("k").get<int>(), decode_exponent(j.at("r")),
                                          j.at("points").get<std::vector<LpVector>>(),
                                          std::move(weights));
  } else {
    throw std::invalid_argument("unknown target_kind '" + kind + "'");
  }
  if (j.contains("total_mass")) out.total_mass = j.at("total_mass").get<double>();
  return out;
}

nlohmann::json to_json(const SphereSampleSet& S) {
  return {{"n", S.n},
          {"p", S.p},
          {"seed", S.seed},
          {"symmetrized", S.symmetrized},
          {"points", S.points}};
}

SphereSampleSet sample_set_from_json(const nlohmann::json& j) {
  SphereSampleSet S;
  S.n = j.at("n").get<int>();
  S.p = j.at("p").get<double>();
  S.seed = j.at("seed").get<std::uint64_t>();
  S.symmetrized = j.at("symmetrized").get<bool>();
  S.points = j.at("points").get<std::vector<LpVector>>();
  for (const auto& pt : S.points)
    if (pt.size() != static_cast<std::size_t>(S.n))
      throw std::invalid_argument("sample set point dimension mismatch");
  return S;
}

nlohmann::json to_json(const certify::SuiteReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"name", r.name},
                       {"seed", r.seed},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"margin", r.margin},
                       {"pass", r.pass}});
  }
  return {{"records", std::move(records)},
          {"pass_count", report.pass_count},
          {"fail_count", report.fail_count}};
}

void write_suite_csv(std::ostream& out, const certify::SuiteReport& report) {
  out << "name,seed,lhs,rhs,margin,pass\n";
  for (const auto& r : report.records) {
    out << r.name << ',' << r.seed << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
        << ',' << format_double(r.margin) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

} // namespace mmconc::io
