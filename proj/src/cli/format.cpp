#include "cuspline/cli/format.hpp"

#include "cuspline/cli/datum_text.hpp"

namespace cuspline::cli {

json to_json(HalfInt h) { return json{{"num2", h.doubled()}}; }

json to_json(const Rational& r) { return json{{"num", r.numerator()}, {"den", r.denominator()}}; }

json to_json(const Segment& s) {
  return json{{"line", s.line}, {"b", to_json(s.b)}, {"e", to_json(s.e)}};
}

json to_json(const Multisegment& m) {
  json a = json::array();
  for (const auto& s : m) a.push_back(to_json(s));
  return a;
}

namespace {

json base_json(const BaseSymbol& b) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cusp>)
          return json{{"kind", "cusp"}, {"sigma", x.sigma}};
        else
          return json{{"kind", std::is_same_v<T, StGen> ? "St" : "CoSt"},
                      {"sigma", x.sigma},
                      {"line", x.line},
                      {"a", to_json(x.a)},
                      {"n", x.n}};
      },
      b);
}

json induced_json(const InducedSymbol& s) {
  return json{{"gl", to_json(s.gl)}, {"base", base_json(s.base)}, {"text", induced_text(s)}};
}

json monomial_json(const GLMonomial& m) {
  return json{{"delta", to_json(m.delta)}, {"zeta", to_json(m.zeta)}, {"text", monomial_text(m)}};
}

std::string signed_lines(const std::vector<std::pair<std::string, Coeff>>& terms) {
  if (terms.empty()) return "0\n";
  std::string out;
  for (const auto& [text, c] : terms) {
    std::string coeff = c < 0 ? "-" : "+";
    Coeff a = c < 0 ? -c : c;
    if (a != 1) coeff += std::to_string(a) + " ";
    else coeff += " ";
    out += coeff + text + "\n";
  }
  return out;
}

}  // namespace

json to_json(const TemperedSymbol& t, const std::string& default_sigma) {
  using Kind = TemperedSymbol::Kind;
  json j{{"sigma", t.sigma}, {"text", format_tempered(t, default_sigma)}};
  switch (t.kind) {
    case Kind::Base:
      j["kind"] = "base";
      j["base"] = base_json(t.base);
      break;
    case Kind::TauPM:
    case Kind::DeltaPM:
      j["kind"] = t.kind == Kind::TauPM ? "tau" : "deltapm";
      j["segment"] = to_json(*t.seg);
      j["sign"] = t.sign;
      break;
    case Kind::IndTemp: {
      j["kind"] = "ind";
      json g = json::array();
      for (const auto& s : t.gammas) g.push_back(to_json(s));
      j["gammas"] = g;
      j["inner"] = to_json(t.parts.front(), default_sigma);
      break;
    }
    case Kind::Split: {
      j["kind"] = "split";
      json p = json::array();
      for (const auto& x : t.parts) p.push_back(to_json(x, default_sigma));
      j["parts"] = p;
      break;
    }
  }
  return j;
}

json to_json(const LanglandsDatum& d, const std::string& default_sigma) {
  return json{{"ms", to_json(d.ms)},
              {"tempered", to_json(d.temp, default_sigma)},
              {"text", format_datum(d, default_sigma)}};
}

json to_json(const SubqDatum& d) {
  json blocks = json::array();
  for (const auto& b : d.blocks) blocks.push_back(to_json(b));
  return json{{"line", d.line},
              {"alpha", to_json(d.alpha)},
              {"n", d.n},
              {"blocks", blocks},
              {"bottom", d.bottom ? to_json(*d.bottom) : json(nullptr)}};
}

json to_json(const CertReport& r, const std::string& default_sigma) {
  json certs = json::array();
  for (const auto& c : r.certificates) {
    json j = to_json(c.datum, default_sigma);
    j["aubert_dual"] = c.aubert_dual;
    certs.push_back(j);
  }
  json steps = json::array();
  for (const auto& s : r.steps) {
    json j{{"id", s.id}, {"claim", s.claim}, {"status", std::string(to_string(s.status))}};
    if (!s.citation.empty()) j["citation"] = s.citation;
    steps.push_back(j);
  }
  json breakdown = json::array();
  for (const auto& [what, c] : r.breakdown) breakdown.push_back(json{{"term", what}, {"count", c}});
  json j{{"datum", to_json(r.datum)},
         {"datum_text", format_datum(to_langlands(r.datum, default_sigma), default_sigma)},
         {"case", std::string(to_string(r.tag))},
         {"witness",
          json{{"description", r.witness.description},
               {"basis", std::string(to_string(r.witness.symbol.basis))},
               {"langlands", to_json(r.witness.langlands)}}},
         {"certificates", certs},
         {"steps", steps},
         {"pass", r.pass()}};
  if (r.multiplicity_bound) {
    j["multiplicity_bound"] = *r.multiplicity_bound;
    j["breakdown"] = breakdown;
  }
  return j;
}

json to_json(const GenericVerdict& v) {
  json j{{"unitarizable", v.unitarizable}, {"trace", v.trace}};
  if (!v.unitarizable) {
    j["failed"] = v.failed;
    j["failed_label"] = v.failed_label;
  }
  return j;
}

json to_json(const Context& ctx) {
  json lines = json::array();
  for (const auto& l : ctx.lines()) {
    json j{{"id", l.id}, {"selfdual", l.selfdual}};
    j["alpha"] = l.alpha ? to_json(*l.alpha) : json(nullptr);
    lines.push_back(j);
  }
  return json{{"sigma", ctx.sigma()}, {"lines", lines}};
}

// ---------------------------------------------------------------------------

std::string gl_key_text(const Multisegment& m, Basis b) {
  if (m.empty()) return "1";
  const char* p = b == Basis::Delta ? "d" : "z";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " * " : "") + (p + m.entries()[i].str());
  return s;
}

std::string base_text(const BaseSymbol& b) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cusp>)
          return x.sigma;
        else
          return std::string(std::is_same_v<T, StGen> ? "St(" : "CoSt(") + x.a.str() + "," +
                 std::to_string(x.n) + ")@" + x.line;
      },
      b);
}

std::string induced_text(const InducedSymbol& s) {
  if (s.gl.empty()) return base_text(s.base);
  return gl_key_text(s.gl, Basis::Delta) + " |x| " + base_text(s.base);
}

std::string monomial_text(const GLMonomial& m) {
  if (m.empty()) return "1";
  std::string s;
  if (!m.delta.empty()) s = gl_key_text(m.delta, Basis::Delta);
  if (!m.zeta.empty()) s += (s.empty() ? "" : " * ") + gl_key_text(m.zeta, Basis::Zeta);
  return s;
}

std::string value_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        std::vector<std::pair<std::string, Coeff>> terms;
        if constexpr (std::is_same_v<T, Coeff>) {
          return std::to_string(x) + "\n";
        } else if constexpr (std::is_same_v<T, GLElt>) {
          for (const auto& [k, c] : x.sum) terms.emplace_back(gl_key_text(k, x.basis), c);
        } else if constexpr (std::is_same_v<T, TensorGL>) {
          for (const auto& [k, c] : x.sum)
            terms.emplace_back(gl_key_text(k.first, x.basis) + " (x) " +
                                   gl_key_text(k.second, x.basis),
                               c);
        } else if constexpr (std::is_same_v<T, ClassElt>) {
          for (const auto& [k, c] : x) terms.emplace_back(induced_text(k), c);
        } else {
          for (const auto& [k, c] : x)
            terms.emplace_back(monomial_text(k.first) + " (x) " + induced_text(k.second), c);
        }
        return signed_lines(terms);
      },
      v);
}

json value_to_json(const Value& v, Type t) {
  json j{{"type", std::string(to_string(t))}};
  json terms = json::array();
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Coeff>) {
          j["value"] = x;
        } else if constexpr (std::is_same_v<T, GLElt>) {
          j["basis"] = std::string(to_string(x.basis));
          for (const auto& [k, c] : x.sum)
            terms.push_back(json{{"key", to_json(k)}, {"coeff", c}, {"text", gl_key_text(k, x.basis)}});
        } else if constexpr (std::is_same_v<T, TensorGL>) {
          j["basis"] = std::string(to_string(x.basis));
          for (const auto& [k, c] : x.sum)
            terms.push_back(json{{"left", to_json(k.first)}, {"right", to_json(k.second)}, {"coeff", c}});
        } else if constexpr (std::is_same_v<T, ClassElt>) {
          for (const auto& [k, c] : x) terms.push_back(json{{"symbol", induced_json(k)}, {"coeff", c}});
        } else {
          for (const auto& [k, c] : x)
            terms.push_back(json{{"left", monomial_json(k.first)},
                                 {"right", induced_json(k.second)},
                                 {"coeff", c}});
        }
      },
      v);
  if (!std::holds_alternative<Coeff>(v)) j["terms"] = terms;
  return j;
}

std::string subq_text(const SubqDatum& d, const std::string& sigma) {
  return format_datum(to_langlands(d, sigma), sigma);
}

std::string report_text(const CertReport& r, const std::string& default_sigma) {
  std::string out;
  out += "datum:   " + subq_text(r.datum, default_sigma) + "\n";
  out += "case:    " + std::string(to_string(r.tag)) + "\n";
  out += "witness: " + r.witness.description + "\n";
  if (!r.certificates.empty()) {
    out += "certificates:\n";
    for (const auto& c : r.certificates)
      out += "  " + std::string(c.aubert_dual ? "dual of " : "") +
             format_datum(c.datum, default_sigma) + "\n";
  }
  out += "steps:\n";
  for (const auto& s : r.steps) {
    out += "  [" + std::string(to_string(s.status)) + "] " + s.id + ": " + s.claim;
    if (!s.citation.empty()) out += " (" + s.citation + ")";
    out += "\n";
  }
  if (r.multiplicity_bound) {
    out += "multiplicity bound: " + std::to_string(*r.multiplicity_bound) + " =";
    for (std::size_t i = 0; i < r.breakdown.size(); ++i)
      out += (i ? " + " : " ") + std::to_string(r.breakdown[i].second);
    out += "\n";
    for (const auto& [what, c] : r.breakdown) out += "  " + std::to_string(c) + "  " + what + "\n";
  }
  out += std::string("result:  ") + (r.pass() ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace cuspline::cli
