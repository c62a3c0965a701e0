#pragma once

#include "latslice/exact/matrix.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace latslice {

using Json = nlohmann::ordered_json;

enum class Verdict { holds, fails, inapplicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "inapplicable";
  }
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "holds") return Verdict::holds;
  if (s == "fails") return Verdict::fails;
  if (s == "inapplicable") return Verdict::inapplicable;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

/// Exact comparison `lhs rel rhs` for rel in <=, <, >=, >, ==.
inline bool compare(const Rational& lhs, const std::string& rel, const Rational& rhs) {
  if (rel == "<=") return lhs <= rhs;
  if (rel == "<") return lhs < rhs;
  if (rel == ">=") return lhs >= rhs;
  if (rel == ">") return lhs > rhs;
  if (rel == "==") return lhs == rhs;
  throw std::invalid_argument("unknown relation '" + rel + "'");
}

inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const Integer& z) { return to_string(z); }

inline Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const ZVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

template <class V>
Json to_json_list(const std::vector<V>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline double safe_ratio(const Rational& a, const Rational& b) {
  if (b == 0) return a == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return Rational(a / b).get_d();
}

/// One inequality instance. The verdict follows from lhs, relation, rhs and the parts' verdicts;
/// relation "all" means the report only aggregates its parts.
struct CheckReport {
  std::string check_id;
  std::string family;
  std::string params;
  std::string relation = "all";
  Rational lhs = 0;
  Rational rhs = 0;
  std::string constant;
  Verdict verdict = Verdict::inapplicable;
  Json witnesses = Json::object();
  Json bounds = Json::object();
  Json diagnostics = Json::object();
  std::vector<std::string> notes;
  std::vector<CheckReport> parts;

  double ratio_float() const { return safe_ratio(lhs, rhs); }

  /// Recomputes the verdict from the exact fields.
  Verdict evaluate() const {
    if (relation == "none") return Verdict::inapplicable;
    bool any_hold = false;
    if (relation != "all") {
      if (!compare(lhs, relation, rhs)) return Verdict::fails;
      any_hold = true;
    }
    for (const auto& p : parts) {
      Verdict v = p.evaluate();
      if (v == Verdict::fails) return Verdict::fails;
      if (v == Verdict::holds) any_hold = true;
    }
    return any_hold ? Verdict::holds : Verdict::inapplicable;
  }

  void finish() {
    for (auto& p : parts) p.finish();
    verdict = evaluate();
  }

  bool failed() const { return verdict == Verdict::fails; }

  void add_diagnostic(const std::string& name, const Rational& q) {
    diagnostics[name] = {{"exact", to_string(q)}, {"approx", json_double(q.get_d())}};
  }

  static Json json_double(double d) { return std::isfinite(d) ? Json(d) : Json(nullptr); }

  Json to_json() const {
    Json j;
    j["check_id"] = check_id;
    j["family"] = family;
    j["params"] = params;
    j["verdict"] = latslice::to_string(verdict);
    j["relation"] = relation;
    if (relation != "all" && relation != "none") {
      j["lhs"] = latslice::to_string(lhs);
      j["rhs"] = latslice::to_string(rhs);
      j["ratio_float"] = json_double(ratio_float());
    }
    if (!constant.empty()) j["constant"] = constant;
    j["witnesses"] = witnesses;
    j["bounds"] = bounds;
    j["diagnostics"] = diagnostics;
    j["notes"] = notes;
    if (!parts.empty()) {
      Json ps = Json::array();
      for (const auto& p : parts) ps.push_back(p.to_json());
      j["parts"] = ps;
    }
    return j;
  }

  static CheckReport from_json(const Json& j) {
    CheckReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.family = j.at("family").get<std::string>();
    r.params = j.at("params").get<std::string>();
    r.relation = j.at("relation").get<std::string>();
    if (j.contains("lhs")) r.lhs = parse_rational(j.at("lhs").get<std::string>());
    if (j.contains("rhs")) r.rhs = parse_rational(j.at("rhs").get<std::string>());
    if (j.contains("constant")) r.constant = j.at("constant").get<std::string>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.witnesses = j.at("witnesses");
    r.bounds = j.at("bounds");
    r.diagnostics = j.at("diagnostics");
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("parts"))
      for (const auto& p : j.at("parts")) r.parts.push_back(from_json(p));
    return r;
  }
};

/// A leaf inequality report.
inline CheckReport inequality(std::string id, const Rational& lhs, std::string rel, const Rational& rhs,
                              std::string constant = {}) {
  CheckReport r;
  r.check_id = std::move(id);
  r.lhs = lhs;
  r.relation = std::move(rel);
  r.rhs = rhs;
  r.constant = std::move(constant);
  r.verdict = r.evaluate();
  return r;
}

inline CheckReport inapplicable(std::string id, std::string reason) {
  CheckReport r;
  r.check_id = std::move(id);
  r.relation = "none";
  r.notes.push_back(std::move(reason));
  return r;
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string csv_header() { return "check_id,family,params,lhs,rhs,ratio_float,verdict,witnesses,bounds\r\n"; }

inline std::string csv_row(const CheckReport& r) {
  std::ostringstream o;
  bool leaf = r.relation != "all" && r.relation != "none";
  std::string ratio;
  if (leaf) {
    Json d = CheckReport::json_double(r.ratio_float());
    ratio = d.dump();
  }
  o << detail::csv_field(r.check_id) << ',' << detail::csv_field(r.family) << ',' << detail::csv_field(r.params)
    << ',' << (leaf ? to_string(r.lhs) : "") << ',' << (leaf ? to_string(r.rhs) : "") << ',' << ratio << ','
    << to_string(r.verdict) << ',' << detail::csv_field(r.witnesses.dump()) << ','
    << detail::csv_field(r.bounds.dump()) << "\r\n";
  return o.str();
}

}  // namespace latslice
