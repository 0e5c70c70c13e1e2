#pragma once

#include <sstream>
#include <string>

#include "json.hpp"
#include "limitlab/corpus.hpp"

namespace limitlab::report {

using Json = nlohmann::ordered_json;

inline Json rat(const Rational& q) { return to_string(q); }
inline Json opt_rat(const std::optional<Rational>& q) { return q ? rat(*q) : Json(nullptr); }
inline Json opt_text(const std::string& s) { return s.empty() ? Json(nullptr) : Json(s); }

inline Json verdict(const Verdict& v) {
  Json w = Json::array();
  for (const auto& s : v.witness) w.push_back({{"eps", rat(s.eps)}, {"delta", rat(s.delta)}});
  return Json{{"status", to_string(v.status)},
              {"witness", w},
              {"evidence", opt_text(v.evidence)},
              {"failing_eps", opt_rat(v.failing_eps)},
              {"reason", opt_text(v.reason)}};
}

inline Json limit_report(const LimitReport& rep) {
  Json types = Json::object();
  for (LimitType t : {LimitType::T1, LimitType::T2, LimitType::T3, LimitType::T4, LimitType::T5, LimitType::T6}) {
    const TypeReport& tr = rep.at(t);
    Json cands = Json::array();
    for (const auto& [L, v] : tr.verdicts) cands.push_back({{"value", rat(L)}, {"verdict", verdict(v)}});
    types[to_string(t)] = {{"exists", to_string(tr.exists)},
                           {"value", opt_rat(tr.value)},
                           {"every_real", tr.every_real},
                           {"reason", opt_text(tr.reason)},
                           {"candidates", cands}};
  }
  return Json{{"a", rat(rep.a)}, {"types", types}, {"chain_consistent", rep.chain_consistent}};
}

inline Json measure_value(const MeasureValue& m) {
  if (m.infinite) return Json{{"value", nullptr}, {"exact", false}, {"lower", nullptr}, {"upper", nullptr}, {"infinite", true}};
  return Json{{"value", rat(m.value)},
              {"exact", m.exact()},
              {"lower", rat(m.lower())},
              {"upper", rat(m.upper())},
              {"infinite", false}};
}

inline std::string density_kind(const DensityVerdict& d) {
  switch (d.kind) {
    case DensityVerdict::Kind::Zero: return "zero";
    case DensityVerdict::Kind::Positive: return "positive";
    case DensityVerdict::Kind::Value: return "value";
    case DensityVerdict::Kind::Undecided: return "undecided";
  }
  return "";
}

inline Json density(const DensityVerdict& d) {
  Json v = nullptr, lb = nullptr;
  if (d.kind == DensityVerdict::Kind::Value) v = rat(d.value);
  if (d.kind == DensityVerdict::Kind::Positive) lb = rat(d.value);
  return Json{{"verdict", density_kind(d)}, {"value", v}, {"lower_bound", lb}, {"reason", opt_text(d.reason)}};
}

inline Json cardinality(const CardinalityClass& c) {
  std::string k;
  switch (c.kind) {
    case CardinalityClass::Kind::Empty: k = "empty"; break;
    case CardinalityClass::Kind::Finite: k = "finite"; break;
    case CardinalityClass::Kind::CountablyInfinite: k = "countably_infinite"; break;
    case CardinalityClass::Kind::Uncountable: k = "uncountable"; break;
  }
  Json count = c.finite() ? Json(c.count) : Json(nullptr);
  return Json{{"class", k}, {"count", count}};
}

inline Json decomposition(const Decomposition& d, bool verified) {
  return Json{{"g", fn_text(d.g)},
              {"h", fn_text(d.h)},
              {"delta0", rat(d.delta0)},
              {"exceptional_union", set_text(d.exceptional_union)},
              {"verified", verified}};
}

inline Json estimate(const McEstimate& e) {
  return Json{{"estimate", e.estimate}, {"sigma", e.sigma}, {"hits", e.hits}, {"samples", e.samples},
              {"window_length", rat(e.window_length)}};
}

inline Json profile(const DensityProfile& p) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const auto& pt = p.points[i];
    pts.push_back({{"delta", rat(pt.delta)},
                   {"ratio", pt.ratio},
                   {"exact_ratio", opt_rat(pt.exact_ratio)},
                   {"source", to_string(pt.source)},
                   {"envelope", p.envelope[i]}});
  }
  return Json{{"monotone", p.monotone}, {"points", pts}};
}

inline Json suite(const SuiteResult& r) {
  return Json{{"name", r.name},       {"cases", r.cases},     {"violations", r.violations},
              {"skipped", r.skipped}, {"seconds", r.seconds}, {"notes", r.notes}};
}

// ---- text ----

inline std::string verdict_text(const Verdict& v, const std::string& indent = "  ") {
  std::ostringstream out;
  out << indent << "verdict: " << to_string(v.status) << "\n";
  if (v.pass()) {
    out << indent << "witness:\n";
    for (const auto& s : v.witness) out << indent << "  eps " << to_string(s.eps) << " -> delta " << to_string(s.delta) << "\n";
  }
  if (v.fail()) out << indent << "evidence: " << v.evidence << "\n";
  if (!v.reason.empty()) out << indent << "reason: " << v.reason << "\n";
  return out.str();
}

inline std::string limit_report_text(const LimitReport& rep) {
  std::ostringstream out;
  out << "limits at a = " << to_string(rep.a) << "\n";
  for (LimitType t : {LimitType::T1, LimitType::T2, LimitType::T3, LimitType::T4, LimitType::T5, LimitType::T6}) {
    const TypeReport& tr = rep.at(t);
    out << "  " << to_string(t) << "  " << to_string(tr.exists);
    if (tr.every_real)
      out << "  every real value";
    else if (tr.value)
      out << "  L = " << to_string(*tr.value);
    if (!tr.reason.empty() && tr.exists == TypeReport::Exists::Undecidable) out << "  (" << tr.reason << ")";
    out << "\n";
  }
  out << "chain consistent: " << (rep.chain_consistent ? "yes" : "no") << "\n";
  return out.str();
}

inline std::string density_text(const DensityVerdict& d) {
  switch (d.kind) {
    case DensityVerdict::Kind::Zero: return "Zero";
    case DensityVerdict::Kind::Positive: return "Positive (lower bound " + to_string(d.value) + ")";
    case DensityVerdict::Kind::Value: return "Value " + to_string(d.value);
    case DensityVerdict::Kind::Undecided: return "Undecided: " + d.reason;
  }
  return "";
}

inline std::string measure_text(const MeasureValue& m) {
  if (m.infinite) return "infinite";
  if (m.exact()) return to_string(m.value);
  return to_string(m.value) + " +- " + to_string(m.bound_gap) + " (certified enclosure [" + to_string(m.lower()) + ", " +
         to_string(m.upper()) + "])";
}

}  // namespace limitlab::report
