#pragma once

// JSON and CSV serialization of reports. High-precision values are written
// as decimal strings with an explicit digit count and binary precision so
// they re-parse to the same bits in any language.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmdeg/degree.hpp"
#include "cmdeg/errors.hpp"
#include "cmdeg/real.hpp"
#include "cmdeg/remainders.hpp"

namespace cmdeg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Values

inline Json real_to_json(const Real& x) {
  const int digits = x.round_trip_digits();
  return Json{{"decimal", x.to_string(digits)}, {"digits", digits}, {"bits", x.precision()}};
}

inline Real real_from_json(const Json& j) {
  try {
    return Real::parse(j.at("decimal").get<std::string>(), j.at("bits").get<long>());
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed real: ") + e.what());
  }
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

/// Exact decimal when the expansion terminates, else 20 significant digits.
inline std::string rational_to_decimal(const Rational& q) {
  Integer den = q.get_den();
  long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return Real(q, 80).to_string(20);
  const long scale = std::max(twos, fives);
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  Integer scaled = q.get_num() * (ten_pow / q.get_den());
  const bool negative = scaled < 0;
  std::string digits = Integer(abs(scaled)).get_str();
  if (scale == 0) return (negative ? "-" : "") + digits + ".0";
  if (static_cast<long>(digits.size()) <= scale) digits.insert(0, static_cast<size_t>(scale + 1 - static_cast<long>(digits.size())), '0');
  digits.insert(digits.size() - static_cast<size_t>(scale), ".");
  return (negative ? "-" : "") + digits;
}

// Structures

inline Json spec_to_json(const RemainderSpec& s) {
  Json j{{"n", s.n}, {"m", s.m}};
  j["special"] = s.special ? Json(to_string(*s.special)) : Json(nullptr);
  j["label"] = s.label();
  return j;
}

inline RemainderSpec spec_from_json(const Json& j) {
  if (!j.at("special").is_null()) {
    auto sp = parse_special(j.at("special").get<std::string>());
    if (!sp) throw InvalidSpec("unknown special '" + j.at("special").get<std::string>() + "'");
    return RemainderSpec::named(*sp);
  }
  return RemainderSpec::of(j.at("n").get<int>(), j.at("m").get<int>());
}

inline Json grid_to_json(const Grid& g) {
  return Json{{"spacing", "log"}, {"t_min", real_to_json(g.t_min)}, {"t_max", real_to_json(g.t_max)}, {"points", g.points}};
}

inline Grid grid_from_json(const Json& j) {
  if (j.at("spacing") != "log") throw InvalidArgument("only log grids are supported");
  return Grid::log_spaced(real_from_json(j.at("t_min")), real_from_json(j.at("t_max")), j.at("points").get<int>());
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "violation") return Verdict::violation;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw InvalidArgument("unknown verdict '" + s + "'");
}

inline SampleStatus sample_status_from_string(const std::string& s) {
  if (s == "ok") return SampleStatus::ok;
  if (s == "violation") return SampleStatus::violation;
  if (s == "inconclusive") return SampleStatus::inconclusive;
  throw InvalidArgument("unknown sample status '" + s + "'");
}

inline Json to_json(const CmCheckReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "cm_check";
  j["evidence"] = CmCheckReport::kEvidenceLabel;
  j["spec"] = spec_to_json(r.spec);
  j["r"] = rational_to_string(r.r);
  j["max_order"] = r.max_order;
  j["grid"] = grid_to_json(r.grid);
  j["precision_bits"] = r.precision_bits;
  j["verdict"] = to_string(r.verdict);
  Json viol = Json::array();
  for (const Violation& v : r.violations) viol.push_back({{"t", real_to_json(v.t)}, {"k", v.k}, {"value", real_to_json(v.value)}});
  j["violations"] = std::move(viol);
  Json inc = Json::array();
  for (const InconclusivePoint& p : r.inconclusive_points)
    inc.push_back({{"t", real_to_json(p.t)}, {"k", p.k}, {"note", p.note}});
  j["inconclusive_points"] = std::move(inc);
  Json samples = Json::array();
  for (const Sample& s : r.samples)
    samples.push_back({{"t", real_to_json(s.t)}, {"k", s.k}, {"value", real_to_json(s.value)}, {"status", to_string(s.status)}});
  j["samples"] = std::move(samples);
  return j;
}

inline void require_schema(const Json& j, const char* kind) {
  if (!j.contains("schema") || j.at("schema") != kSchemaVersion)
    throw InvalidArgument("unsupported or missing schema version");
  if (j.at("kind") != kind) throw InvalidArgument(std::string("expected a ") + kind + " record");
}

inline CmCheckReport cm_check_report_from_json(const Json& j) {
  require_schema(j, "cm_check");
  CmCheckReport r;
  r.spec = spec_from_json(j.at("spec"));
  r.r = rational_from_string(j.at("r").get<std::string>());
  r.max_order = j.at("max_order").get<int>();
  r.grid = grid_from_json(j.at("grid"));
  r.precision_bits = j.at("precision_bits").get<long>();
  for (const Json& v : j.at("violations"))
    r.violations.push_back({real_from_json(v.at("t")), v.at("k").get<int>(), real_from_json(v.at("value"))});
  for (const Json& p : j.at("inconclusive_points"))
    r.inconclusive_points.push_back({real_from_json(p.at("t")), p.at("k").get<int>(), p.at("note").get<std::string>()});
  for (const Json& s : j.at("samples"))
    r.samples.push_back({real_from_json(s.at("t")), s.at("k").get<int>(), real_from_json(s.at("value")),
                         sample_status_from_string(s.at("status").get<std::string>())});
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (!r.consistent()) throw InvalidArgument("verdict disagrees with the violation and inconclusive lists");
  return r;
}

inline Json to_json(const DegreeBracket& b) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "degree_bracket";
  j["evidence"] = CmCheckReport::kEvidenceLabel;
  j["spec"] = spec_to_json(b.spec);
  j["lattice_step"] = rational_to_string(b.lattice_step);
  j["lower"] = b.lower ? Json(rational_to_string(*b.lower)) : Json(nullptr);
  j["upper"] = rational_to_string(b.upper);
  j["lower_decimal"] = b.lower ? Json(rational_to_decimal(*b.lower)) : Json(nullptr);
  j["upper_decimal"] = rational_to_decimal(b.upper);
  j["upper_method"] = to_string(b.upper_method);
  j["small_t_upper"] = rational_to_string(b.small_t_upper);
  j["small_t_numeric"] = b.small_t_numeric ? real_to_json(*b.small_t_numeric) : Json(nullptr);
  j["small_t_note"] = b.small_t_note;
  Json inc = Json::array();
  for (const Rational& r : b.inconclusive_r) inc.push_back(rational_to_string(r));
  j["inconclusive_r"] = std::move(inc);
  j["checks_run"] = b.checks_run;
  j["lower_evidence"] = b.lower_evidence ? to_json(*b.lower_evidence) : Json(nullptr);
  j["violation_evidence"] = b.violation_evidence ? to_json(*b.violation_evidence) : Json(nullptr);
  return j;
}

inline UpperMethod upper_method_from_string(const std::string& s) {
  if (s == "small_t_criterion") return UpperMethod::small_t_criterion;
  if (s == "scan_violation") return UpperMethod::scan_violation;
  throw InvalidArgument("unknown upper method '" + s + "'");
}

inline DegreeBracket degree_bracket_from_json(const Json& j) {
  require_schema(j, "degree_bracket");
  DegreeBracket b;
  b.spec = spec_from_json(j.at("spec"));
  b.lattice_step = rational_from_string(j.at("lattice_step").get<std::string>());
  if (!j.at("lower").is_null()) b.lower = rational_from_string(j.at("lower").get<std::string>());
  b.upper = rational_from_string(j.at("upper").get<std::string>());
  b.upper_method = upper_method_from_string(j.at("upper_method").get<std::string>());
  b.small_t_upper = rational_from_string(j.at("small_t_upper").get<std::string>());
  if (!j.at("small_t_numeric").is_null()) b.small_t_numeric = real_from_json(j.at("small_t_numeric"));
  b.small_t_note = j.at("small_t_note").get<std::string>();
  for (const Json& r : j.at("inconclusive_r")) b.inconclusive_r.push_back(rational_from_string(r.get<std::string>()));
  b.checks_run = j.at("checks_run").get<int>();
  if (!j.at("lower_evidence").is_null()) b.lower_evidence = cm_check_report_from_json(j.at("lower_evidence"));
  if (!j.at("violation_evidence").is_null()) b.violation_evidence = cm_check_report_from_json(j.at("violation_evidence"));
  return b;
}

inline ConjectureStatus conjecture_status_from_string(const std::string& s) {
  if (s == "proven") return ConjectureStatus::proven;
  if (s == "partially_proven") return ConjectureStatus::partially_proven;
  if (s == "open") return ConjectureStatus::open;
  throw InvalidArgument("unknown conjecture status '" + s + "'");
}

inline Json to_json(const ConjectureTable& t) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "conjecture_scan";
  j["evidence"] = CmCheckReport::kEvidenceLabel;
  Json rows = Json::array();
  for (const ConjectureRow& r : t.rows) {
    Json row{{"n", r.n}, {"m", r.m}, {"conjectured", r.conjectured}, {"status", to_string(r.status)}};
    row["contains_conjecture"] = r.contains_conjecture();
    row["bracket"] = r.bracket ? to_json(*r.bracket) : Json(nullptr);
    row["error"] = r.error ? Json(*r.error) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline ConjectureTable conjecture_table_from_json(const Json& j) {
  require_schema(j, "conjecture_scan");
  ConjectureTable t;
  for (const Json& row : j.at("rows")) {
    ConjectureRow r;
    r.n = row.at("n").get<int>();
    r.m = row.at("m").get<int>();
    r.conjectured = row.at("conjectured").get<long>();
    r.status = conjecture_status_from_string(row.at("status").get<std::string>());
    if (!row.at("bracket").is_null()) r.bracket = degree_bracket_from_json(row.at("bracket"));
    if (!row.at("error").is_null()) r.error = row.at("error").get<std::string>();
    t.rows.push_back(std::move(r));
  }
  return t;
}

// Plot data

/// Columns t,k,value: one row per stored sample, ordered by (t, k).
inline void emit_plot_data(const CmCheckReport& r, std::ostream& out) {
  out << "t,k,value\n";
  for (const Sample& s : r.samples) out << s.t.to_decimal() << ',' << s.k << ',' << s.value.to_decimal() << '\n';
}

/// Columns n,m,lower,upper,conjectured; lower is empty when no lattice
/// point passed or the cell failed.
inline void emit_plot_data(const ConjectureTable& t, std::ostream& out) {
  out << "n,m,lower,upper,conjectured\n";
  for (const ConjectureRow& r : t.rows) {
    out << r.n << ',' << r.m << ',';
    if (r.bracket && r.bracket->lower) out << rational_to_decimal(*r.bracket->lower);
    out << ',';
    if (r.bracket) out << rational_to_decimal(r.bracket->upper);
    out << ',' << r.conjectured << '\n';
  }
}

}  // namespace cmdeg
