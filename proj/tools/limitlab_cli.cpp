#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "limitlab/limitlab.hpp"

using namespace limitlab;
using report::Json;

namespace {

enum Exit { kDecided = 0, kError = 1, kUndecidable = 2 };

struct Options {
  std::string command;
  std::string fn, set, at, type, value;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

// A file path if one exists, the argument itself otherwise.
std::string load(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational rational_arg(const std::string& name, const std::string& text) {
  auto r = parse_rational(text);
  if (!r) throw RangeError("--" + name + " expects a rational such as 1/3, got '" + text + "'");
  return *r;
}

template <class T>
const T& need(const T& v, const char* flag, const std::string& cmd) {
  if (v.empty()) throw RangeError(cmd + " needs " + flag);
  return v;
}

struct Outcome {
  int code = kDecided;
  Json input = Json::object();
  Json result = Json::object();
  std::string text;
};

LimitType type_arg(const Options& o) {
  auto t = parse_limit_type(need(o.type, "--type", o.command));
  if (!t) throw RangeError("--type expects t1..t6, got '" + o.type + "'");
  return *t;
}

Outcome run_classify(const Options& o) {
  Outcome out;
  PiecewiseFn f = parse_fn(load(need(o.fn, "--fn", o.command)));
  Rational a = rational_arg("at", need(o.at, "--at", o.command));
  out.input = {{"function", fn_text(f)}, {"a", report::rat(a)}};
  LimitReport rep = classify(f, a);
  out.result = report::limit_report(rep);
  out.text = report::limit_report_text(rep);
  out.code = rep.decided() ? kDecided : kUndecidable;
  return out;
}

Outcome run_limit(const Options& o) {
  if (o.value.empty()) {
    // no candidate: report whether a limit of this type exists at all
    LimitType t = type_arg(o);
    Outcome out = run_classify(o);
    out.input["type"] = to_string(t);
    Json whole = out.result;
    out.result = whole["types"][to_string(t)];
    out.result["chain_consistent"] = whole["chain_consistent"];
    const std::string exists = out.result["exists"];
    std::ostringstream s;
    s << to_string(t) << " limit exists: " << exists;
    if (out.result["every_real"].get<bool>())
      s << " (every real value)";
    else if (!out.result["value"].is_null())
      s << " (L = " << out.result["value"].get<std::string>() << ")";
    out.text = s.str() + "\n";
    out.code = exists == "undecidable" ? kUndecidable : kDecided;
    return out;
  }
  Outcome out;
  PiecewiseFn f = parse_fn(load(need(o.fn, "--fn", o.command)));
  Rational a = rational_arg("at", need(o.at, "--at", o.command));
  Rational L = rational_arg("value", o.value);
  LimitType t = type_arg(o);
  out.input = {{"function", fn_text(f)}, {"a", report::rat(a)}, {"value", report::rat(L)}, {"type", to_string(t)}};
  Verdict v = check(f, a, L, t);
  out.result = report::verdict(v);
  out.text = to_string(t) + " limit " + to_string(L) + " at " + to_string(a) + "\n" + report::verdict_text(v);
  out.code = v.status == Verdict::Status::Undecidable ? kUndecidable : kDecided;
  return out;
}

Outcome run_measure(const Options& o) {
  Outcome out;
  SetExpr s = parse_set(load(need(o.set, "--set", o.command)));
  out.input = {{"set", set_text(s)}};
  MeasureValue m = measure(s);
  out.result = report::measure_value(m);
  out.text = "measure: " + report::measure_text(m) + "\n";
  return out;
}

Outcome run_density(const Options& o) {
  Outcome out;
  SetExpr s = parse_set(load(need(o.set, "--set", o.command)));
  Rational a = rational_arg("at", need(o.at, "--at", o.command));
  out.input = {{"set", set_text(s)}, {"a", report::rat(a)}};
  DensityVerdict d = density_at(s, a);
  out.result = report::density(d);
  out.text = "density at " + to_string(a) + ": " + report::density_text(d) + "\n";
  out.code = d.kind == DensityVerdict::Kind::Undecided ? kUndecidable : kDecided;
  return out;
}

Outcome run_cardinality(const Options& o) {
  Outcome out;
  SetExpr s = parse_set(load(need(o.set, "--set", o.command)));
  out.input = {{"set", set_text(s)}};
  CardinalityClass c = cardinality(normal_form(s));
  out.result = report::cardinality(c);
  out.text = "cardinality: " + to_string(c) + "\n";
  if (!o.at.empty()) {
    Rational a = rational_arg("at", o.at);
    Rational r = o.value.empty() ? Rational(1) : rational_arg("value", o.value);
    if (r <= 0) throw RangeError("--value must be a positive radius");
    LocalTrace tr = window_trace(s, a, r);
    CardinalityClass lc = cardinality(tr);
    out.input["a"] = report::rat(a);
    out.input["radius"] = report::rat(r);
    out.result["local"] = report::cardinality(lc);
    out.result["local"]["trace"] = set_text(to_expr(tr.parts));
    out.text += "in the punctured window of radius " + to_string(r) + " at " + to_string(a) + ": " + to_string(lc) + "\n";
  }
  return out;
}

Outcome run_decompose(const Options& o) {
  Outcome out;
  PiecewiseFn f = parse_fn(load(need(o.fn, "--fn", o.command)));
  Rational a = rational_arg("at", need(o.at, "--at", o.command));
  Rational L = rational_arg("value", need(o.value, "--value", o.command));
  LimitType t = o.type.empty() ? LimitType::T5 : type_arg(o);
  out.input = {{"function", fn_text(f)}, {"a", report::rat(a)}, {"value", report::rat(L)}, {"type", to_string(t)}};
  Verdict v = check(f, a, L, t);
  if (v.status == Verdict::Status::Undecidable) {
    out.result = {{"verdict", report::verdict(v)}};
    out.text = "cannot decompose: " + to_string(t) + " limit is undecidable (" + v.reason + ")\n";
    out.code = kUndecidable;
    return out;
  }
  Decomposition d = decompose(f, a, L, t);
  bool ok = verify_decomposition(d, f, a, L, t);
  out.result = report::decomposition(d, ok);
  out.text = "g = " + fn_text(d.g) + "\nh = " + fn_text(d.h) + "\ndelta0 = " + to_string(d.delta0) +
             "\nexceptional union = " + set_text(d.exceptional_union) + "\nverified: " + (ok ? "yes" : "no") + "\n";
  return out;
}

Outcome run_estimate(const Options& o) {
  Outcome out;
  SetExpr s = parse_set(load(need(o.set, "--set", o.command)));
  SampleConfig cfg;
  cfg.seed = o.seed;
  if (o.samples) cfg.samples = o.samples;
  if (!o.at.empty()) cfg.a = rational_arg("at", o.at);
  if (!o.value.empty()) cfg.delta = rational_arg("value", o.value);
  if (cfg.delta <= 0) throw RangeError("--value must be a positive radius");
  out.input = {{"set", set_text(s)}, {"a", report::rat(cfg.a)}, {"delta", report::rat(cfg.delta)},
               {"seed", cfg.seed}, {"samples", cfg.samples}};
  McEstimate mc = mc_measure(s, cfg);
  out.result["mc"] = report::estimate(mc);
  std::ostringstream t;
  t << "monte carlo: " << mc.estimate << " +- " << mc.sigma << " (" << mc.hits << "/" << mc.samples << " hits)\n";
  Json exact = nullptr;
  try {
    SetExpr window = s & SetExpr::interval(Interval::open(cfg.a - cfg.delta, cfg.a + cfg.delta));
    MeasureValue m = measure(window);
    if (!m.infinite) {
      exact = report::measure_value(m);
      exact["agrees"] = mc.agrees_with(m.value);
      t << "exact: " << report::measure_text(m) << (exact["agrees"].get<bool>() ? " (agrees)" : " (disagrees)") << "\n";
    }
  } catch (const Error& e) {
    t << "exact: unavailable (" << e.what() << ")\n";
  }
  out.result["exact"] = exact;
  DensityProfile p = density_profile(s, cfg.a, 12, cfg.seed, std::min<std::size_t>(cfg.samples, 10000));
  out.result["profile"] = report::profile(p);
  t << "density profile at " << to_string(cfg.a) << (p.monotone ? " (monotone)" : "") << ":\n";
  for (std::size_t i = 0; i < p.points.size(); ++i)
    t << "  delta " << to_string(p.points[i].delta) << "  " << p.points[i].ratio << "  ["
      << to_string(p.points[i].source) << "]\n";
  out.text = t.str();
  return out;
}

Outcome run_verify(const Options& o) {
  Outcome out;
  if (!o.fn.empty()) {
    Outcome d = run_decompose(o);
    if (d.code != kDecided) return d;
    d.code = d.result["verified"].get<bool>() ? kDecided : kError;
    return d;
  }
  std::uint64_t seed = o.seed ? o.seed : 1;
  std::size_t n = o.samples ? o.samples : 200;
  out.input = {{"seed", seed}, {"cases", n}};
  std::vector<SuiteResult> rs{equivalence_suite(seed, n),        chain_suite(seed, n),
                              uniqueness_suite(seed, n / 2),  arithmetic_suite(seed, std::max<std::size_t>(n / 4, 1)),
                              decomposition_suite(seed, n),   oracle_suite(seed, 100, 20000),
                              parser_suite(seed, 2 * n)};
  Json suites = Json::array();
  std::ostringstream t;
  bool all = true;
  for (const auto& r : rs) {
    suites.push_back(report::suite(r));
    all = all && r.ok();
    t << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.violations << " violations, "
      << r.skipped << " skipped";
    t << "\n";
    for (const auto& n : r.notes) t << "  " << n << "\n";
  }
  out.result = {{"suites", suites}, {"all_passed", all}};
  out.text = t.str();
  out.code = all ? kDecided : kError;
  return out;
}

const char* status_name(int code) {
  return code == kDecided ? "decided" : code == kUndecidable ? "undecidable" : "error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitlab: generalized limits of piecewise polynomial functions"};
  Options o;
  app.add_option("command", o.command, "classify|limit|measure|density|cardinality|decompose|estimate|verify")
      ->required()
      ->check(CLI::IsMember({"classify", "limit", "measure", "density", "cardinality", "decompose", "estimate", "verify"}));
  app.add_option("--fn", o.fn, "function file or inline text");
  app.add_option("--set", o.set, "set file or inline text");
  app.add_option("--at", o.at, "the point a");
  app.add_option("--type", o.type, "limit type t1..t6");
  app.add_option("--value", o.value, "candidate limit L, or window radius for estimate/cardinality");
  app.add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--seed", o.seed, "sampling seed");
  app.add_option("--samples", o.samples, "sample count (case count for verify)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  const bool structured = o.format == "structured";
  Json doc{{"command", o.command}};
  int code = kError;
  try {
    Outcome out;
    if (o.command == "classify") out = run_classify(o);
    else if (o.command == "limit") out = run_limit(o);
    else if (o.command == "measure") out = run_measure(o);
    else if (o.command == "density") out = run_density(o);
    else if (o.command == "cardinality") out = run_cardinality(o);
    else if (o.command == "decompose") out = run_decompose(o);
    else if (o.command == "estimate") out = run_estimate(o);
    else out = run_verify(o);
    code = out.code;
    doc["status"] = status_name(code);
    doc["input"] = out.input;
    doc["result"] = out.result;
    if (!structured) std::cout << out.text;
  } catch (const Error& e) {
    code = dynamic_cast<const UndecidableDensity*>(&e) ? kUndecidable : kError;
    Json err{{"kind", e.kind()}, {"message", e.what()}, {"line", nullptr}, {"column", nullptr}};
    if (auto* se = dynamic_cast<const SyntaxError*>(&e)) {
      err["line"] = se->line();
      err["column"] = se->column();
    }
    doc["status"] = status_name(code);
    doc["error"] = err;
    if (!structured) std::cerr << e.kind() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = kError;
    doc["status"] = "error";
    doc["error"] = {{"kind", "InternalError"}, {"message", e.what()}, {"line", nullptr}, {"column", nullptr}};
    if (!structured) std::cerr << "error: " << e.what() << "\n";
  }
  if (structured) std::cout << doc.dump(2) << "\n";
  return code;
}
