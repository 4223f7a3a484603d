#include "cuspline/cli/commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cuspline/cli/datum_text.hpp"
#include "cuspline/cli/dsl.hpp"
#include "cuspline/cli/format.hpp"
#include "cuspline/jantzen.hpp"
#include "cuspline/selftest.hpp"

namespace cuspline::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

struct Options {
  bool json = false;
  std::string context_file;
  std::vector<std::string> line_specs;
  std::optional<std::string> sigma;

  std::vector<std::string> alphas;
  std::optional<std::int64_t> n;
  std::int64_t min_n = 1;
  std::string datum;
  bool all = false;
  std::string part1;
  std::string part2;
  std::string from;
  std::string to;
  std::optional<std::string> to_sigma;
  std::string expr;
  std::string file;
  bool by_line = false;
  std::optional<int> criterion;
};

struct Outcome {
  int code = kOk;
  std::string status = "OK";
  json result;
  std::string text;
};

Outcome verdict(bool pass, json result, std::string text) {
  return Outcome{pass ? kOk : kFail, pass ? "PASS" : "FAIL", std::move(result), std::move(text)};
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  const Context& context() const { return ctx_; }

  void build_context() {
    Context base = o_.context_file.empty() ? Context() : load_context_file(o_.context_file);
    ctx_ = Context(o_.sigma.value_or(base.sigma()), base.lines());
    for (const auto& spec : o_.line_specs) {
      Line l = parse_line_spec(spec);
      if (ctx_.has(l.id)) {
        if (l.alpha) ctx_.set_alpha(l.id, *l.alpha);
      } else {
        ctx_.add_line(l);
      }
    }
  }

  void ensure_line(const LineId& id) {
    if (!ctx_.has(id)) ctx_.add_line(Line{id, true, std::nullopt});
  }

  // The line carrying the regular family and its reducibility point.
  std::pair<LineId, HalfInt> family() {
    LineId id;
    if (!o_.line_specs.empty()) {
      id = parse_line_spec(o_.line_specs.front()).id;
    } else {
      for (const auto& l : ctx_.lines())
        if (l.selfdual && l.alpha) {
          id = l.id;
          break;
        }
      if (id.empty()) id = "rho";
    }
    ensure_line(id);
    if (!o_.alphas.empty()) {
      if (o_.alphas.size() > 1) usage("--alpha given more than once");
      ctx_.set_alpha(id, HalfInt::parse(o_.alphas.front()));
    }
    const Line& l = ctx_.line(id);
    if (!l.alpha) usage("no reducibility point for line '" + id + "'; pass --alpha");
    if (*l.alpha == HalfInt{}) usage("the regular family needs alpha > 0");
    return {id, *l.alpha};
  }

  Outcome eval() {
    Expr e = parse(o_.expr);
    for (const auto& l : e.lines) ensure_line(l);
    Value v = e.eval(ctx_);
    return Outcome{kOk, "OK", value_to_json(v, e.type), value_text(v)};
  }

  Outcome enumerate() {
    auto [line, alpha] = family();
    std::int64_t n = require_n();
    json list = json::array();
    std::string text;
    std::size_t i = 0;
    for (const auto& d : enumerate_subquotients(ctx_, line, alpha, n)) {
      CaseTag tag = classify(d);
      json j = to_json(d);
      j["text"] = subq_text(d, ctx_.sigma());
      j["case"] = std::string(to_string(tag));
      list.push_back(j);
      text += std::to_string(++i) + ". " + subq_text(d, ctx_.sigma()) + "  [" +
              std::string(to_string(tag)) + "]\n";
    }
    text += std::to_string(list.size()) + " data\n";
    return Outcome{kOk, "OK", json{{"count", list.size()}, {"data", list}}, text};
  }

  Outcome classify_cmd() {
    family();
    SubqDatum d = parse_subq_datum(ctx_, require_datum());
    CaseTag tag = classify(d);
    json r{{"datum", to_json(d)}, {"text", subq_text(d, ctx_.sigma())}, {"case", std::string(to_string(tag))}};
    return Outcome{kOk, "OK", r, subq_text(d, ctx_.sigma()) + ": " + std::string(to_string(tag)) + "\n"};
  }

  Outcome check(bool length) {
    family();
    SubqDatum d = parse_subq_datum(ctx_, require_datum());
    CertReport r = length ? check_length_ge5(ctx_, d) : check_mult_le4(ctx_, d);
    return verdict(r.pass(), to_json(r, ctx_.sigma()), report_text(r, ctx_.sigma()));
  }

  Outcome prop41() {
    std::vector<HalfInt> alphas;
    for (const auto& a : o_.alphas) alphas.push_back(HalfInt::parse(a));
    if (alphas.empty())
      alphas = {HalfInt::from_doubled(1), HalfInt::from_int(1), HalfInt::from_doubled(3)};
    for (HalfInt a : alphas)
      if (a <= HalfInt{}) usage("--alpha must be positive");
    std::int64_t max_n = o_.n.value_or(3);
    if (o_.min_n < 0 || max_n < o_.min_n) usage("need 0 <= --min-n <= --n");
    LineId line = "rho";
    if (!o_.line_specs.empty()) line = parse_line_spec(o_.line_specs.front()).id;
    ctx_ = family_context(line, alphas.front(), ctx_.sigma());

    auto entries = check_prop41(alphas, o_.min_n, max_n, line, ctx_.sigma());
    bool pass = true;
    std::string text;
    json detail = json::array();
    std::map<std::pair<HalfInt, std::int64_t>, std::array<std::size_t, 3>> tally;
    for (const auto& e : entries) {
      pass = pass && e.pass();
      auto& t = tally[{e.datum.alpha, e.datum.n}];
      ++t[0];
      if (e.eligible()) ++t[1];
      if (e.eligible() && e.pass()) ++t[2];
      if (!o_.all) continue;
      json j{{"datum", to_json(e.datum)},
             {"text", subq_text(e.datum, ctx_.sigma())},
             {"case", std::string(to_string(e.tag))},
             {"eligible", e.eligible()},
             {"pass", e.pass()}};
      text += "== " + subq_text(e.datum, ctx_.sigma()) + " (alpha " + e.datum.alpha.str() + ", n " +
              std::to_string(e.datum.n) + ")\n";
      if (e.eligible()) {
        j["length"] = to_json(*e.length, ctx_.sigma());
        j["mult"] = to_json(*e.mult, ctx_.sigma());
        text += "-- length >= 5\n" + report_text(*e.length, ctx_.sigma());
        text += "-- multiplicity <= 4\n" + report_text(*e.mult, ctx_.sigma());
      } else {
        text += "case " + std::string(to_string(e.tag)) + ": not covered\n";
      }
      detail.push_back(j);
    }
    json summary = json::array();
    for (const auto& [key, t] : tally) {
      summary.push_back(json{{"alpha", to_json(key.first)},
                             {"n", key.second},
                             {"data", t[0]},
                             {"eligible", t[1]},
                             {"passed", t[2]}});
      text += "alpha " + key.first.str() + ", n " + std::to_string(key.second) + ": " +
              std::to_string(t[0]) + " data, " + std::to_string(t[1]) + " eligible, " +
              std::to_string(t[2]) + " passed\n";
    }
    text += pass ? "PASS\n" : "FAIL\n";
    json r{{"summary", summary}, {"pass", pass}};
    if (o_.all) r["entries"] = detail;
    return verdict(pass, r, text);
  }

  Outcome jantzen() {
    auto p1 = split_list(o_.part1);
    auto p2 = split_list(o_.part2);
    if (p1.empty()) usage("--part1 must name at least one line");
    for (const auto& l : p1) ensure_line(l);
    for (const auto& l : p2) ensure_line(l);
    LanglandsDatum d = parse_datum(ctx_, require_datum());
    for (const auto& l : d.lines()) ensure_line(l);
    std::set<LineId> s1(p1.begin(), p1.end());
    std::set<LineId> s2;
    for (const auto& l : ctx_.lines())
      if (!s1.count(l.id)) s2.insert(l.id);
    for (const auto& l : p2)
      if (s1.count(l)) usage("line '" + l + "' is in both parts");
    LinePartition part = LinePartition::make(ctx_, s1, s2);
    LanglandsDatum x1 = xi_project(d, part, 1);
    LanglandsDatum x2 = xi_project(d, part, 2);
    LanglandsDatum back = psi_combine(x1, x2);
    bool ok = back == d;
    const std::string& sg = ctx_.sigma();
    json r{{"datum", to_json(d, sg)},
           {"part1", to_json(x1, sg)},
           {"part2", to_json(x2, sg)},
           {"recombined", to_json(back, sg)},
           {"roundtrip", ok}};
    std::string text = "X1: " + format_datum(x1, sg) + "\nX2: " + format_datum(x2, sg) +
                       "\nPsi(X1, X2): " + format_datum(back, sg) + "\nround trip: " +
                       (ok ? "PASS" : "FAIL") + "\n";
    return verdict(ok, r, text);
  }

  Outcome transport() {
    if (o_.from.empty() || o_.to.empty()) usage("transport needs --from and --to");
    LanglandsDatum d = parse_datum(ctx_, require_datum());
    LanglandsDatum t = transport_line(ctx_, d, o_.from, o_.to, o_.to_sigma);
    const std::string& sg = ctx_.sigma();
    return Outcome{kOk, "OK", json{{"datum", to_json(d, sg)}, {"transported", to_json(t, sg)}},
                   format_datum(t, sg) + "\n"};
  }

  Outcome generic() {
    std::ifstream in(o_.file);
    if (!in) usage("cannot open '" + o_.file + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      usage(std::string("invalid JSON: ") + e.what());
    }
    if (doc.contains("sigma")) ctx_ = Context(doc["sigma"].get<std::string>(), ctx_.lines());
    if (doc.contains("lines")) {
      for (const auto& jl : doc["lines"]) {
        Line l{jl.at("id").get<std::string>(), jl.value("selfdual", true), std::nullopt};
        if (jl.contains("alpha")) l.alpha = HalfInt::parse(scalar_text(jl["alpha"]));
        if (ctx_.has(l.id)) {
          if (l.alpha) ctx_.set_alpha(l.id, *l.alpha);
        } else {
          ctx_.add_line(l);
        }
      }
    }
    json r;
    GenericVerdict v;
    try {
      if (doc.contains("entries")) {
        GenericDatum gd;
        for (const auto& je : doc["entries"]) gd.push_back(entry_from_json(je));
        v = generic_unitarizable(gd);
      } else if (doc.contains("factors")) {
        GenericDescription desc = description_from_json(doc);
        json entries = json::array();
        for (const auto& e : generic_datum(ctx_, desc)) entries.push_back(entry_to_json(e));
        r["entries"] = entries;
        v = o_.by_line ? decide_generic_by_line(ctx_, desc) : decide_generic(ctx_, desc);
      } else {
        usage("expected an \"entries\" or a \"factors\" key");
      }
    } catch (const json::exception& e) {
      usage(std::string("bad generic datum: ") + e.what());
    }
    r["verdict"] = to_json(v);
    std::string text;
    for (const auto& t : v.trace) text += t + "\n";
    text += v.unitarizable ? "unitarizable\n"
                           : "not unitarizable: condition " + v.failed +
                                 (v.failed_label.empty() ? "" : " (" + v.failed_label + ")") + "\n";
    return verdict(v.unitarizable, r, text);
  }

  Outcome selftest() {
    std::vector<CriterionResult> results;
    if (o_.criterion) {
      if (*o_.criterion < 1 || *o_.criterion > kCriteria) usage("no such criterion");
      results.push_back(run_criterion(*o_.criterion));
    } else {
      results = run_acceptance();
    }
    bool pass = true;
    json list = json::array();
    std::string text;
    for (const auto& c : results) {
      pass = pass && c.pass();
      list.push_back(json{{"id", c.id},
                          {"name", c.name},
                          {"holds", c.ok},
                          {"limit_ms", static_cast<std::int64_t>(c.limit * 1000)},
                          {"pass", c.pass()},
                          {"detail", c.detail}});
      std::ostringstream line;
      line.setf(std::ios::fixed);
      line.precision(3);
      line << (c.pass() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " ("
           << c.seconds << " s, limit " << c.limit << " s)";
      if (!c.detail.empty()) line << " " << c.detail;
      text += line.str() + "\n";
    }
    return verdict(pass, json{{"criteria", list}}, text);
  }

 private:
  const Options& o_;
  Context ctx_;

  [[noreturn]] static void usage(const std::string& msg) {
    throw Error(ErrorCode::InvalidArgument, msg);
  }

  std::int64_t require_n() const {
    if (!o_.n) usage("--n is required");
    if (*o_.n < 0) usage("--n must be >= 0");
    return *o_.n;
  }

  const std::string& require_datum() const {
    if (o_.datum.empty()) usage("--datum is required");
    return o_.datum;
  }

  static std::string scalar_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    throw Error(ErrorCode::InvalidArgument, "expected an integer or a fraction string");
  }

  static GenericEntry entry_from_json(const json& j) {
    GenericEntry e;
    e.label = j.at("label").get<std::string>();
    if (j.contains("dual_label")) e.dual_label = j["dual_label"].get<std::string>();
    e.selfdual = j.value("selfdual", true);
    for (const auto& x : j.at("exponents")) e.exponents.push_back(parse_rational(scalar_text(x)));
    e.halfred = j.value("halfred", false);
    e.tau_red = j.value("tau_red", false);
    return e;
  }

  static json entry_to_json(const GenericEntry& e) {
    json ex = json::array();
    for (const auto& x : e.exponents) ex.push_back(to_json(x));
    json j{{"label", e.label},
           {"selfdual", e.selfdual},
           {"exponents", ex},
           {"halfred", e.halfred},
           {"tau_red", e.tau_red}};
    if (e.dual_label) j["dual_label"] = *e.dual_label;
    return j;
  }

  static std::vector<Segment> segments(const json& j) {
    std::vector<Segment> out;
    for (const auto& s : j) out.push_back(parse_segment(s.get<std::string>()));
    return out;
  }

  GenericDescription description_from_json(const json& doc) {
    GenericDescription d;
    for (const auto& jf : doc.at("factors")) {
      Segment s = parse_segment(jf.at("segment").get<std::string>());
      ensure_line(s.line);
      d.factors.push_back(GenericFactor{s, parse_rational(scalar_text(jf.at("exponent")))});
    }
    if (doc.contains("tempered"))
      for (const auto& [line, jt] : doc["tempered"].items()) {
        ensure_line(line);
        d.tempered[line] = LineTempered{segments(jt.value("jord", json::array())),
                                        segments(jt.value("gammas", json::array()))};
      }
    return d;
  }
};

void emit(const Options& o, const std::string& command, const std::vector<std::string>& args,
          const Runner& runner, const Outcome& r, std::ostream& out) {
  if (!o.json) {
    out << r.text;
    return;
  }
  json doc{{"command", json{{"name", command}, {"args", args}}},
           {"context", to_json(runner.context())},
           {"result", r.result},
           {"status", r.status}};
  out << doc.dump(2) << "\n";
}

int report_error(const Options& o, const std::string& command,
                 const std::vector<std::string>& args, const std::string& kind,
                 const std::string& message, const json& extra, std::ostream& out,
                 std::ostream& err) {
  err << "error: " << message << "\n";
  if (o.json) {
    json e{{"kind", kind}, {"message", message}};
    for (const auto& [k, v] : extra.items()) e[k] = v;
    json doc{{"command", json{{"name", command}, {"args", args}}},
             {"error", e},
             {"status", "ERROR"}};
    out << doc.dump(2) << "\n";
  }
  return kUsage;
}

}  // namespace

Line parse_line_spec(const std::string& spec) {
  auto colon = spec.find(':');
  Line l{trim(spec.substr(0, colon)), true, std::nullopt};
  if (l.id.empty()) throw Error(ErrorCode::InvalidArgument, "empty line name in '" + spec + "'");
  if (colon != std::string::npos) l.alpha = HalfInt::parse(trim(spec.substr(colon + 1)));
  return l;
}

Context parse_context_text(const std::string& text) {
  std::string sigma = "sigma";
  std::vector<Line> lines;
  auto line_ref = [&](const std::string& id) -> Line& {
    for (auto& l : lines)
      if (l.id == id) return l;
    lines.push_back(Line{id, true, std::nullopt});
    return lines.back();
  };
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::InvalidArgument,
                  "context line " + std::to_string(lineno) + ": " + msg);
    };
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(raw.substr(0, eq));
    std::string value = trim(raw.substr(eq + 1));
    if (key == "sigma") {
      if (value.empty()) fail("empty sigma");
      sigma = value;
      continue;
    }
    if (key.rfind("line.", 0) != 0) fail("unknown key '" + key + "'");
    auto dot = key.rfind('.');
    if (dot <= 5) fail("expected line.ID.alpha or line.ID.selfdual");
    std::string id = key.substr(5, dot - 5);
    std::string field = key.substr(dot + 1);
    Line& l = line_ref(id);
    if (field == "alpha") {
      l.alpha = HalfInt::parse(value);
    } else if (field == "selfdual") {
      if (value != "true" && value != "false") fail("selfdual must be true or false");
      l.selfdual = value == "true";
    } else {
      fail("unknown field '" + field + "'");
    }
  }
  return Context(sigma, lines);
}

Context load_context_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open context file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_context_text(ss.str());
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations in the Grothendieck groups of GL(n) and classical p-adic groups",
               "cuspline"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Print one JSON document instead of text");
  app.add_option("--context", o.context_file, "Context file (sigma and lines)");
  app.add_option("--line", o.line_specs, "Line NAME or NAME:alpha; repeatable");
  app.add_option("--sigma", o.sigma, "Name of the cuspidal representation sigma");

  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  std::map<std::string, std::function<Outcome(Runner&)>> handlers;

  auto add = [&](const std::string& name, const std::string& help,
                 std::function<Outcome(Runner&)> h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    handlers[name] = std::move(h);
    return sub;
  };

  add("eval", "Evaluate an expression", [](Runner& r) { return r.eval(); })
      ->add_option("expr", o.expr, "Expression")
      ->required();

  auto* en = add("enumerate", "List the irreducible subquotients of the regular family",
                 [](Runner& r) { return r.enumerate(); });
  en->add_option("--alpha", o.alphas, "Reducibility point")->expected(1);
  en->add_option("--n", o.n, "Length parameter n");

  for (const char* name : {"classify", "check-length", "check-mult"}) {
    std::string nm = name;
    auto* s = add(nm,
                  nm == "classify"       ? "Classify a datum of the regular family"
                  : nm == "check-length" ? "Certify length >= 5 for a datum"
                                         : "Certify multiplicity <= 4 for a datum",
                  [nm](Runner& r) {
                    if (nm == "classify") return r.classify_cmd();
                    return r.check(nm == "check-length");
                  });
    s->add_option("--alpha", o.alphas, "Reducibility point")->expected(1);
    s->add_option("--datum", o.datum, "Langlands datum, e.g. 'L([1/2,3/2]@rho; sigma)'")
        ->required();
  }

  auto* p41 = add("check-prop41", "Sweep both checkers over the regular family",
                  [](Runner& r) { return r.prop41(); });
  p41->add_option("--alpha", o.alphas, "Reducibility point; repeatable (default 1/2, 1, 3/2)");
  p41->add_option("--n", o.n, "Largest n (default 3)");
  p41->add_option("--min-n", o.min_n, "Smallest n (default 1)");
  p41->add_flag("--all", o.all, "Print the report of every datum");

  auto* js = add("jantzen-split", "Project a datum onto a partition of the lines and recombine",
                 [](Runner& r) { return r.jantzen(); });
  js->add_option("--datum", o.datum, "Langlands datum")->required();
  js->add_option("--part1", o.part1, "Comma-separated lines of the first part")->required();
  js->add_option("--part2", o.part2, "Comma-separated lines of the second part");

  auto* tr = add("transport", "Move a datum to another line with the same reducibility point",
                 [](Runner& r) { return r.transport(); });
  tr->add_option("--datum", o.datum, "Langlands datum")->required();
  tr->add_option("--from", o.from, "Source line")->required();
  tr->add_option("--to", o.to, "Target line")->required();
  tr->add_option("--to-sigma", o.to_sigma, "Target sigma");

  auto* gc = add("generic-check", "Decide unitarizability of a generic representation",
                 [](Runner& r) { return r.generic(); });
  gc->add_option("file", o.file, "JSON description")->required();
  gc->add_flag("--by-line", o.by_line, "Decide every line separately");

  auto* st = add("selftest", "Run the acceptance suite", [](Runner& r) { return r.selftest(); });
  st->add_option("--criterion", o.criterion, "Run one criterion only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Runner runner(o);
  try {
    runner.build_context();
    Outcome r = handlers.at(command)(runner);
    emit(o, command, args, runner, r, out);
    return r.code;
  } catch (const ParseError& e) {
    json extra{{"position", e.position()}};
    if (!e.type_error()) extra["expected"] = e.expected();
    std::string msg = std::string(e.what()) + " (position " + std::to_string(e.position()) + ")";
    return report_error(o, command, args, e.type_error() ? "type" : "syntax", msg, extra, out,
                        err);
  } catch (const Error& e) {
    return report_error(o, command, args, std::string(to_string(e.code())), e.what(),
                        json::object(), out, err);
  } catch (const std::exception& e) {
    return report_error(o, command, args, "internal", e.what(), json::object(), out, err);
  }
}

}  // namespace cuspline::cli
