#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "phasekit/errors.hpp"

namespace phasekit::cli {

namespace {

double parse_double(const std::string& text) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "not a number: '" + text + "'");
  }
  if (used != text.size()) fail(ErrorCode::kParse, "not a number: '" + text + "'");
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParse, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, "invalid JSON in '" + path + "': " + e.what());
  }
}

void check_schema(const json& j, const std::string& schema) {
  if (j.contains("schema") && j.at("schema") != schema)
    fail(ErrorCode::kParse, "expected schema " + schema + ", got " + j.at("schema").dump());
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma != std::string::npos)
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
  static const std::regex full(R"(^\s*([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)\s*([+-]\s*[0-9.]*(?:[eE][+-]?[0-9]+)?)\s*[ij]\s*$)");
  static const std::regex imag(R"(^\s*([+-]?[0-9.]*(?:[eE][+-]?[0-9]+)?)\s*[ij]\s*$)");
  std::smatch m;
  auto coeff = [](std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (std::regex_match(text, m, full)) return {parse_double(m[1]), coeff(m[2])};
  if (std::regex_match(text, m, imag)) return {0.0, coeff(m[1])};
  return {parse_double(text), 0.0};
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = parse_double(item);
    if (v != std::round(v)) fail(ErrorCode::kParse, "not an integer: '" + item + "'");
    out.push_back(static_cast<long long>(v));
  }
  if (out.empty()) fail(ErrorCode::kParse, "empty integer list");
  return out;
}

MilnorLatticeData lattice_from_json(const json& j) {
  check_schema(j, "lattice.v1");
  MilnorLatticeData d;
  try {
    d.label = j.value("label", std::string("dataset"));
    d.rank = j.at("rank").get<int>();
    d.ell = j.value("ell", 0);
    if (d.rank < 1) fail(ErrorCode::kParse, "rank must be positive");
    const auto& sf = j.at("seifert");
    if (static_cast<int>(sf.size()) != d.rank) fail(ErrorCode::kParse, "seifert must have rank rows");
    d.seifert = IMat(d.rank, d.rank);
    for (int i = 0; i < d.rank; ++i) {
      if (static_cast<int>(sf[i].size()) != d.rank) fail(ErrorCode::kParse, "seifert must be square");
      for (int k = 0; k < d.rank; ++k) d.seifert(i, k) = sf[i][k].get<long long>();
    }
    const auto& sp = j.at("spectrum");
    if (static_cast<int>(sp.size()) != d.rank) fail(ErrorCode::kParse, "spectrum must have rank entries");
    for (const auto& q : sp) {
      if (!q.is_array() || q.size() != 2) fail(ErrorCode::kParse, "spectrum entries are [num, den]");
      const long long den = q[1].get<long long>();
      if (den == 0) fail(ErrorCode::kParse, "spectrum denominator is zero");
      d.spectrum.emplace_back(q[0].get<long long>(), den);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("lattice.v1: ") + e.what());
  }
  return d;
}

json lattice_to_json(const MilnorLatticeData& d) {
  json sf = json::array(), sp = json::array();
  for (int i = 0; i < d.rank; ++i) {
    json row = json::array();
    for (int k = 0; k < d.rank; ++k) row.push_back(d.seifert(i, k));
    sf.push_back(row);
  }
  for (const Rational& q : d.spectrum) sp.push_back(json::array({q.num, q.den}));
  return json{{"schema", "lattice.v1"}, {"label", d.label}, {"rank", d.rank},
              {"ell", d.ell},           {"seifert", sf},    {"spectrum", sp}};
}

MilnorLatticeData load_lattice(const std::string& path) { return lattice_from_json(read_json_file(path)); }

LoopInput path_from_json(const json& j) {
  check_schema(j, "path.v1");
  LoopInput out;
  try {
    const json& pts = j.is_array() ? j : j.at("points");
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2) fail(ErrorCode::kParse, "path points are [re, im] pairs");
      out.points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    if (j.is_object()) out.clearance = j.value("clearance", out.clearance);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("path.v1: ") + e.what());
  }
  if (out.points.size() < 2) fail(ErrorCode::kParse, "path needs at least two points");
  if (!(out.clearance > 0.0)) fail(ErrorCode::kParse, "clearance must be positive");
  return out;
}

LoopInput load_path(const std::string& path) { return path_from_json(read_json_file(path)); }

std::string report_to_csv(const SuiteReport& report) {
  std::vector<std::string> columns{"command", "dataset"};
  std::set<std::string> seen(columns.begin(), columns.end());
  for (const auto& rec : report.records)
    for (const auto& [key, value] : rec.items())
      if (seen.insert(key).second) columns.push_back(key);
  std::ostringstream out;
  for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << "\n";
  for (const auto& rec : report.records) {
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ",";
      if (columns[c] == "command") {
        out << csv_cell(report.command);
      } else if (columns[c] == "dataset") {
        out << csv_cell(report.dataset);
      } else if (rec.contains(columns[c])) {
        out << csv_cell(rec.at(columns[c]));
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace phasekit::cli
