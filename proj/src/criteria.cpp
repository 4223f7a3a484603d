#include "cuspline/criteria.hpp"

#include <algorithm>
#include <set>

namespace cuspline {

Rational parse_rational(std::string_view text) {
  auto to_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty number in '" + std::string(text) + "'");
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size())
      throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_int(text));
  std::int64_t den = to_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  return Rational(to_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

const Rational kHalf(1, 2);
const Rational kOne(1);

std::string list(const std::vector<Rational>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "}";
}

GenericVerdict fail(GenericVerdict v, const std::string& cond, const std::string& label,
                    const std::string& why) {
  v.unitarizable = false;
  v.failed = cond;
  v.failed_label = label;
  v.trace.push_back("(" + cond + ") fails for " + label + ": " + why);
  return v;
}

}  // namespace

GenericVerdict generic_unitarizable(const GenericDatum& d) {
  std::map<std::string, const GenericEntry*> by_label;
  for (const auto& e : d) {
    if (!by_label.emplace(e.label, &e).second)
      throw Error(ErrorCode::MalformedDatum, "duplicate label " + e.label);
    for (const auto& x : e.exponents)
      if (x <= Rational(0))
        throw Error(ErrorCode::MalformedDatum,
                    "exponent " + to_string(x) + " of " + e.label + " is not positive");
  }

  GenericVerdict v;
  for (const auto& [label, ep] : by_label) {
    const GenericEntry& e = *ep;
    std::vector<Rational> ex = e.exponents;
    std::sort(ex.begin(), ex.end());

    // (1) Hermitian.
    if (!e.selfdual) {
      std::vector<Rational> dual;
      if (e.dual_label) {
        auto it = by_label.find(*e.dual_label);
        if (it != by_label.end()) dual = it->second->exponents;
      }
      std::sort(dual.begin(), dual.end());
      if (dual != ex)
        return fail(v, "1", label, "E = " + list(ex) + " but E of the contragredient = " + list(dual));
    }
    v.trace.push_back("(1) holds for " + label);

    // (2) Complementary series bound below 1/2.
    if (!e.selfdual || e.halfred) {
      for (const auto& x : ex)
        if (!(x < kHalf)) return fail(v, "2", label, "exponent " + to_string(x) + " >= 1/2");
      v.trace.push_back("(2) holds for " + label);
      continue;
    }

    // (3) Barbasch conditions.
    std::vector<Rational> as, bs;
    for (const auto& x : ex) (x <= kHalf ? as : bs).push_back(x);
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (!(bs[j] < kOne)) return fail(v, "3-order", label, "exponent " + to_string(bs[j]) + " >= 1");
      if (j > 0 && bs[j] == bs[j - 1])
        return fail(v, "3-order", label, "repeated exponent " + to_string(bs[j]) + " above 1/2");
    }
    const std::size_t k = as.size(), l = bs.size();
    for (const auto& a : as)
      for (const auto& b : bs)
        if (a + b == kOne)
          return fail(v, "3a", label, to_string(a) + " + " + to_string(b) + " = 1");
    if (k > 1 && as[k - 2] == kHalf) return fail(v, "3a", label, "alpha_{k-1} = 1/2");
    if (l > 0) {
      std::size_t cnt = 0;
      for (const auto& a : as)
        if (a > kOne - bs[0]) ++cnt;
      if (cnt % 2 != 0)
        return fail(v, "3b", label, std::to_string(cnt) + " exponents exceed 1 - beta_1");
    }
    for (std::size_t j = 0; j + 1 < l; ++j) {
      std::size_t cnt = 0;
      for (const auto& a : as)
        if (kOne - bs[j] > a && a > kOne - bs[j + 1]) ++cnt;
      if (cnt % 2 != 1)
        return fail(v, "3c", label,
                    std::to_string(cnt) + " exponents between " + to_string(kOne - bs[j + 1]) +
                        " and " + to_string(kOne - bs[j]));
    }
    if (e.tau_red && (k + l) % 2 != 0)
      return fail(v, "3d", label, "k + l = " + std::to_string(k + l) + " is odd");
    v.trace.push_back("(3) holds for " + label);
  }
  return v;
}

bool halfred_from_parity(HalfInt alpha, std::int64_t card) {
  if (card <= 0) throw Error(ErrorCode::InvalidArgument, "card must be positive");
  bool odd = card % 2 != 0;
  return alpha.is_integer() ? !odd : odd;
}

bool tau_reducible(HalfInt alpha, const Segment& d, const std::vector<Segment>& jord,
                   const std::vector<Segment>& gammas) {
  if (!d.contains(alpha)) return false;
  if (std::find(jord.begin(), jord.end(), d) != jord.end()) return false;
  if (std::find(gammas.begin(), gammas.end(), d) != gammas.end()) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::map<LineId, GenericDescription> generic_line_factor(const Context& ctx,
                                                         const GenericDescription& d) {
  std::map<LineId, GenericDescription> out;
  for (const auto& f : d.factors) {
    ctx.line(f.base.line);
    if (!f.base.is_symmetric())
      throw Error(ErrorCode::InvalidArgument, "unitary part " + f.base.str() + " is not symmetric");
    out[f.base.line].factors.push_back(f);
  }
  for (const auto& [line, t] : d.tempered) {
    ctx.line(line);
    for (const auto& s : t.jord)
      if (s.line != line)
        throw Error(ErrorCode::NotProjectable, "tempered data for '" + line + "' uses " + s.str());
    for (const auto& s : t.gammas)
      if (s.line != line)
        throw Error(ErrorCode::NotProjectable, "tempered data for '" + line + "' uses " + s.str());
    out[line].tempered[line] = t;
  }
  return out;
}

GenericDatum generic_datum(const Context& ctx, const GenericDescription& d) {
  std::map<std::string, GenericEntry> entries;
  for (const auto& f : d.factors) {
    const Line& line = ctx.line(f.base.line);
    if (!f.base.is_symmetric())
      throw Error(ErrorCode::InvalidArgument, "unitary part " + f.base.str() + " is not symmetric");
    const std::string label = f.base.str();
    auto [it, fresh] = entries.try_emplace(label);
    GenericEntry& e = it->second;
    if (fresh) {
      e.label = label;
      e.selfdual = line.selfdual;
      if (!line.alpha)
        throw Error(ErrorCode::UnsupportedLine, "line '" + line.id + "' has no reducibility point");
      e.halfred = halfred_from_parity(*line.alpha, f.base.length());
      LineTempered t;
      if (auto tt = d.tempered.find(line.id); tt != d.tempered.end()) t = tt->second;
      e.tau_red = tau_reducible(*line.alpha, f.base, t.jord, t.gammas);
    }
    e.exponents.push_back(f.exponent);
  }
  GenericDatum out;
  for (auto& [label, e] : entries) out.push_back(std::move(e));
  return out;
}

GenericVerdict decide_generic(const Context& ctx, const GenericDescription& d) {
  return generic_unitarizable(generic_datum(ctx, d));
}

GenericVerdict decide_generic_by_line(const Context& ctx, const GenericDescription& d) {
  GenericVerdict all;
  for (const auto& [line, part] : generic_line_factor(ctx, d)) {
    GenericVerdict v = decide_generic(ctx, part);
    for (auto& t : v.trace) all.trace.push_back(line + ": " + t);
    if (!v.unitarizable && all.unitarizable) {
      all.unitarizable = false;
      all.failed = v.failed;
      all.failed_label = v.failed_label;
    }
  }
  return all;
}

GenericDescription transport_generic(const Context& ctx, const GenericDescription& d,
                                     const LineId& from, const LineId& to) {
  const Line& lf = ctx.line(from);
  const Line& lt = ctx.line(to);
  if (!lf.alpha || !lt.alpha || *lf.alpha != *lt.alpha)
    throw Error(ErrorCode::ReducibilityMismatch,
                "lines '" + from + "' and '" + to + "' reduce at different points");
  if (*lf.alpha == HalfInt{})
    throw Error(ErrorCode::ReducibilityMismatch, "transport at alpha = 0 is not provided");
  auto move = [&](const Segment& s) {
    if (s.line != from)
      throw Error(ErrorCode::InvalidArgument, "description is not supported on '" + from + "'");
    return Segment::make(to, s.b, s.e);
  };
  GenericDescription r;
  for (const auto& f : d.factors) r.factors.push_back({move(f.base), f.exponent});
  for (const auto& [line, t] : d.tempered) {
    LineTempered nt;
    for (const auto& s : t.jord) nt.jord.push_back(move(s));
    for (const auto& s : t.gammas) nt.gammas.push_back(move(s));
    if (line != from)
      throw Error(ErrorCode::InvalidArgument, "description is not supported on '" + from + "'");
    r.tempered[to] = nt;
  }
  return r;
}

}  // namespace cuspline
