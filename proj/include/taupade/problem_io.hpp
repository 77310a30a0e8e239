#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "taupade/froissart.hpp"
#include "taupade/tau.hpp"

namespace taupade {

struct FilterSpec {
  int pmax = 25;
  int qmax = 25;
  double tol = kDefaultFroissartTol;
  FilterStrategy strategy = FilterStrategy::max_clean_diagonal;
};

/// Parsed problem file: basis, truncation degree, the differential operator in
/// serialized form, and an optional filtering block.
struct ProblemSpec {
  BasisKind basis = BasisKind::chebyshev;
  int n = 0;
  int nu = 0;
  std::vector<std::vector<double>> p;  ///< monomial coefficients, index = derivative order
  std::vector<double> rhs;             ///< basis coefficients of f
  std::vector<Condition> conditions;
  std::optional<FilterSpec> filter;

  PolyOperator to_operator() const {
    PolyOperator op;
    op.nu = nu;
    op.p = p;
    op.rhs = CoeffSeries{OrthoBasis(basis), rhs.empty() ? std::vector<double>{0.0} : rhs};
    op.conditions = conditions;
    return op;
  }
};

namespace detail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw SpecError("unknown key \"" + it.key() + "\"", path + "." + it.key());
  }
}

inline double finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SpecError("expected a number", path);
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SpecError("number must be finite", path);
  return d;
}

inline int integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SpecError("expected an integer", path);
  return v.get<int>();
}

inline std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw SpecError("expected a list of numbers", path);
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(finite_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Parses and fully validates a problem file (JSON-compatible structured
/// text).  Unknown keys are rejected; syntax errors carry line/column and
/// semantic errors carry the field path.
inline ProblemSpec parse_problem(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    const size_t stop = std::min(e.byte, text.size());
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("problem file: " + std::string(e.what()), line, col);
  }
  if (!doc.is_object()) throw SpecError("problem file must be an object", "$");
  detail::reject_unknown_keys(doc, {"basis", "n", "nu", "p", "rhs", "conditions", "filter"},
                              "$");
  for (const char* key : {"basis", "n", "nu", "p", "rhs", "conditions"})
    if (!doc.contains(key)) throw SpecError("missing key \"" + std::string(key) + "\"",
                                            "$." + std::string(key));

  ProblemSpec spec;
  if (!doc["basis"].is_string()) throw SpecError("expected a string", "$.basis");
  spec.basis = make_basis(doc["basis"].get<std::string>()).kind();
  spec.n = detail::integer_at(doc["n"], "$.n");
  spec.nu = detail::integer_at(doc["nu"], "$.nu");
  if (spec.nu < 0) throw SpecError("nu must be nonnegative", "$.nu");
  if (spec.n < spec.nu) throw SpecError("n must be at least nu", "$.n");

  if (!doc["p"].is_array()) throw SpecError("expected a list of coefficient lists", "$.p");
  for (size_t i = 0; i < doc["p"].size(); ++i)
    spec.p.push_back(detail::number_list(doc["p"][i], "$.p[" + std::to_string(i) + "]"));
  if (static_cast<int>(spec.p.size()) != spec.nu + 1)
    throw SpecError("expected nu+1 = " + std::to_string(spec.nu + 1) +
                        " coefficient lists, got " + std::to_string(spec.p.size()),
                    "$.p");

  spec.rhs = detail::number_list(doc["rhs"], "$.rhs");

  if (!doc["conditions"].is_array()) throw SpecError("expected a list", "$.conditions");
  for (size_t ci = 0; ci < doc["conditions"].size(); ++ci) {
    const std::string cpath = "$.conditions[" + std::to_string(ci) + "]";
    const auto& jc = doc["conditions"][ci];
    if (!jc.is_object()) throw SpecError("expected an object", cpath);
    detail::reject_unknown_keys(jc, {"terms", "value"}, cpath);
    if (!jc.contains("terms") || !jc["terms"].is_array() || jc["terms"].empty())
      throw SpecError("condition needs a nonempty \"terms\" list", cpath + ".terms");
    if (!jc.contains("value")) throw SpecError("condition needs a \"value\"", cpath + ".value");
    Condition cond;
    cond.value = detail::finite_number(jc["value"], cpath + ".value");
    for (size_t ti = 0; ti < jc["terms"].size(); ++ti) {
      const std::string tpath = cpath + ".terms[" + std::to_string(ti) + "]";
      const auto& jt = jc["terms"][ti];
      if (!jt.is_object()) throw SpecError("expected an object", tpath);
      detail::reject_unknown_keys(jt, {"point", "order", "weight"}, tpath);
      ConditionTerm term;
      if (!jt.contains("point")) throw SpecError("term needs a \"point\"", tpath + ".point");
      term.point = detail::finite_number(jt["point"], tpath + ".point");
      if (term.point < -1.0 || term.point > 1.0)
        throw SpecError("point must lie in [-1, 1]", tpath + ".point");
      if (jt.contains("order")) term.order = detail::integer_at(jt["order"], tpath + ".order");
      if (term.order < 0 || term.order > spec.nu - 1)
        throw SpecError("derivative order must lie in [0, nu-1]", tpath + ".order");
      if (jt.contains("weight"))
        term.weight = detail::finite_number(jt["weight"], tpath + ".weight");
      cond.terms.push_back(term);
    }
    spec.conditions.push_back(std::move(cond));
  }
  if (static_cast<int>(spec.conditions.size()) != spec.nu)
    throw SpecError("expected nu = " + std::to_string(spec.nu) + " conditions, got " +
                        std::to_string(spec.conditions.size()),
                    "$.conditions");

  if (doc.contains("filter")) {
    const auto& jf = doc["filter"];
    if (!jf.is_object()) throw SpecError("expected an object", "$.filter");
    detail::reject_unknown_keys(jf, {"pmax", "qmax", "tol", "strategy"}, "$.filter");
    FilterSpec f;
    if (jf.contains("pmax")) f.pmax = detail::integer_at(jf["pmax"], "$.filter.pmax");
    if (jf.contains("qmax")) f.qmax = detail::integer_at(jf["qmax"], "$.filter.qmax");
    if (jf.contains("tol")) f.tol = detail::finite_number(jf["tol"], "$.filter.tol");
    if (f.pmax < 1 || f.qmax < 1) throw SpecError("pmax and qmax must be >= 1", "$.filter");
    if (!(f.tol > 0.0)) throw SpecError("tol must be positive", "$.filter.tol");
    if (jf.contains("strategy")) {
      if (!jf["strategy"].is_string()) throw SpecError("expected a string", "$.filter.strategy");
      f.strategy = filter_strategy_from_string(jf["strategy"].get<std::string>());
    }
    spec.filter = f;
  }
  return spec;
}

/// Serializes a ProblemSpec back to the file format; emit(parse(text)) is
/// semantically identical to the input.
inline std::string emit_problem(const ProblemSpec& spec) {
  using detail::json;
  json doc;
  doc["basis"] = to_string(spec.basis);
  doc["n"] = spec.n;
  doc["nu"] = spec.nu;
  doc["p"] = spec.p;
  doc["rhs"] = spec.rhs;
  doc["conditions"] = json::array();
  for (const Condition& c : spec.conditions) {
    json jc;
    jc["terms"] = json::array();
    for (const ConditionTerm& t : c.terms)
      jc["terms"].push_back({{"point", t.point}, {"order", t.order}, {"weight", t.weight}});
    jc["value"] = c.value;
    doc["conditions"].push_back(jc);
  }
  if (spec.filter) {
    doc["filter"] = {{"pmax", spec.filter->pmax},
                     {"qmax", spec.filter->qmax},
                     {"tol", spec.filter->tol},
                     {"strategy", to_string(spec.filter->strategy)}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace taupade
