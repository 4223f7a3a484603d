#include "cuspline/classical.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cuspline {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

const std::string& base_sigma(const BaseSymbol& b) {
  return std::visit([](const auto& x) -> const std::string& { return x.sigma; }, b);
}

std::optional<LineId> base_line(const BaseSymbol& b) {
  return std::visit(overloaded{
                        [](const Cusp&) -> std::optional<LineId> { return std::nullopt; },
                        [](const StGen& s) -> std::optional<LineId> { return s.line; },
                        [](const CoStGen& s) -> std::optional<LineId> { return s.line; },
                    },
                    b);
}

std::int64_t base_degree(const BaseSymbol& b) {
  return std::visit(overloaded{
                        [](const Cusp&) -> std::int64_t { return 0; },
                        [](const StGen& s) { return s.n + 1; },
                        [](const CoStGen& s) { return s.n + 1; },
                    },
                    b);
}

void validate_base(const Context& ctx, const BaseSymbol& b) {
  auto check = [&](const LineId& line, HalfInt a, std::int64_t n) {
    const Line& l = ctx.line(line);
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative length parameter");
    if (!(a > HalfInt{}))
      throw Error(ErrorCode::InvalidArgument, "generalized Steinberg needs a > 0");
    if (!l.alpha || *l.alpha != a)
      throw Error(ErrorCode::ReducibilityMismatch,
                  "line '" + line + "' does not reduce at " + a.str());
  };
  std::visit(overloaded{
                 [](const Cusp&) {},
                 [&](const StGen& s) { check(s.line, s.a, s.n); },
                 [&](const CoStGen& s) { check(s.line, s.a, s.n); },
             },
             b);
}

ClassElt class_key(InducedSymbol s, Coeff c) {
  ClassElt r;
  r.add(std::move(s), c);
  return r;
}

ClassElt cusp_elt(const std::string& sigma) {
  return class_key(InducedSymbol{Multisegment{}, Cusp{sigma}});
}

// ---------------------------------------------------------------------------

GLMonomial GLMonomial::make(Multisegment delta, Multisegment zeta) {
  std::vector<Segment> d = delta.entries();
  std::vector<Segment> z;
  for (const auto& s : zeta) {
    if (s.length() == 1)
      d.push_back(s);
    else
      z.push_back(s);
  }
  GLMonomial m;
  m.delta = Multisegment(std::move(d));
  m.zeta = Multisegment(std::move(z));
  return m;
}

Support GLMonomial::support() const {
  return support_union(cuspline::support(delta), cuspline::support(zeta));
}

std::vector<LineId> GLMonomial::lines() const {
  std::set<LineId> ids;
  for (const auto& s : delta) ids.insert(s.line);
  for (const auto& s : zeta) ids.insert(s.line);
  return {ids.begin(), ids.end()};
}

GLMonomial GLMonomial::operator*(const GLMonomial& o) const {
  GLMonomial m;
  m.delta = delta + o.delta;
  m.zeta = zeta + o.zeta;
  return m;
}

// ---------------------------------------------------------------------------

ClassElt rtimes(const GLElt& x, const ClassElt& y) {
  if (x.basis != Basis::Delta)
    throw Error(ErrorCode::BasisMismatch, "x| takes a delta-basis left operand");
  ClassElt r;
  for (const auto& [m, cx] : x.sum)
    for (const auto& [sym, cy] : y) r.add(InducedSymbol{m + sym.gl, sym.base}, cx * cy);
  return r;
}

TensorClass mustar_base(const BaseSymbol& b) {
  TensorClass r;
  std::visit(
      overloaded{
          [&](const Cusp& c) { r.add(ClassPair{GLMonomial{}, InducedSymbol{{}, c}}, 1); },
          [&](const StGen& s) {
            // sum_{k=-1}^{n} delta([a+k+1, a+n]) (x) delta([a, a+k]; sigma)
            for (std::int64_t k = -1; k <= s.n; ++k) {
              Multisegment left;
              if (auto seg = make_segment_or_empty(s.line, s.a + (k + 1), s.a + s.n))
                left = Multisegment{*seg};
              BaseSymbol right = k < 0 ? BaseSymbol{Cusp{s.sigma}}
                                       : BaseSymbol{StGen{s.sigma, s.line, s.a, k}};
              r.add(ClassPair{GLMonomial::of_delta(std::move(left)), InducedSymbol{{}, right}}, 1);
            }
          },
          [&](const CoStGen& s) {
            // sum_{k=-1}^{n} L(nu^-(a+n),...,nu^-(a+k+1)) (x) L(nu^(a+k),...,nu^a; sigma)
            for (std::int64_t k = -1; k <= s.n; ++k) {
              Multisegment left;
              if (auto seg = make_segment_or_empty(s.line, -(s.a + s.n), -(s.a + (k + 1))))
                left = Multisegment{*seg};
              BaseSymbol right = k < 0 ? BaseSymbol{Cusp{s.sigma}}
                                       : BaseSymbol{CoStGen{s.sigma, s.line, s.a, k}};
              r.add(ClassPair{GLMonomial::make({}, std::move(left)), InducedSymbol{{}, right}}, 1);
            }
          },
      },
      b);
  return r;
}

namespace {

TensorGL mstar_product(const Context& ctx, const Multisegment& gl) {
  // M* is a ring map, so the key expands segment by segment.
  TensorGL acc;
  acc.basis = Basis::Delta;
  acc.sum.add(MsPair{}, 1);
  for (const auto& s : gl) acc = tensor_mul(acc, Mstar(ctx, GLElt::key(Basis::Delta, Multisegment{s})));
  return acc;
}

}  // namespace

TensorClass mustar(const Context& ctx, const ClassElt& y) {
  TensorClass r;
  for (const auto& [sym, c] : y) {
    TensorGL gl_part = mstar_product(ctx, sym.gl);
    TensorClass base_part = mustar_base(sym.base);
    for (const auto& [ab, cab] : gl_part.sum) {
      for (const auto& [cd, ccd] : base_part) {
        GLMonomial left = GLMonomial::of_delta(ab.first) * cd.first;
        InducedSymbol right{ab.second + cd.second.gl, cd.second.base};
        r.add(ClassPair{std::move(left), std::move(right)}, c * cab * ccd);
      }
    }
  }
  return r;
}

GLElt s_GL(const Context& ctx, const ClassElt& y) {
  GLElt r = GLElt{Basis::Delta, {}};
  for (const auto& [sym, c] : y) {
    if (!std::holds_alternative<Cusp>(sym.base))
      throw Error(ErrorCode::InvalidArgument, "s_GL is only available over a cuspidal base");
    r = r + c * MstarGL(ctx, GLElt::key(Basis::Delta, sym.gl));
  }
  return r;
}

TensorClass split_reducible_point(const Context& ctx, const TensorClass& t) {
  TensorClass r;
  for (const auto& [pair, c] : t) {
    const InducedSymbol& rs = pair.second;
    bool split = false;
    if (const auto* cusp = std::get_if<Cusp>(&rs.base); cusp && rs.gl.size() == 1) {
      const Segment& s = rs.gl.entries().front();
      const Line* line = ctx.find(s.line);
      if (s.length() == 1 && line && line->alpha && *line->alpha == s.b && s.b > HalfInt{}) {
        r.add(ClassPair{pair.first, InducedSymbol{{}, StGen{cusp->sigma, s.line, s.b, 0}}}, c);
        r.add(ClassPair{pair.first, InducedSymbol{{}, CoStGen{cusp->sigma, s.line, s.b, 0}}}, c);
        split = true;
      }
    }
    if (!split) r.add(pair, c);
  }
  return r;
}

Coeff mult_in(const TensorClass& t, const GLMonomial& left,
              const std::function<bool(const InducedSymbol&)>& rightpred) {
  Coeff total = 0;
  for (const auto& [pair, c] : t)
    if (pair.first == left && rightpred(pair.second)) total += c;
  return total;
}

Coeff mult_in(const TensorClass& t, const Multisegment& left,
              const std::function<bool(const InducedSymbol&)>& rightpred) {
  return mult_in(t, GLMonomial::of_delta(left), rightpred);
}

// ---------------------------------------------------------------------------

TemperedSymbol TemperedSymbol::cusp(const std::string& sigma) { return of_base(Cusp{sigma}); }

TemperedSymbol TemperedSymbol::of_base(BaseSymbol b) {
  if (std::holds_alternative<CoStGen>(b))
    throw Error(ErrorCode::InvalidArgument, "a CoSt symbol is not tempered");
  TemperedSymbol t;
  t.kind = Kind::Base;
  t.sigma = base_sigma(b);
  t.base = std::move(b);
  return t;
}

TemperedSymbol TemperedSymbol::tau(const Segment& du, int sign, const std::string& sigma) {
  if (!du.is_symmetric())
    throw Error(ErrorCode::InvalidArgument, "tau needs a symmetric segment, got " + du.str());
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  TemperedSymbol t;
  t.kind = Kind::TauPM;
  t.sigma = sigma;
  t.base = Cusp{sigma};
  t.seg = du;
  t.sign = sign;
  return t;
}

TemperedSymbol TemperedSymbol::delta_pm(const Segment& d, int sign, const std::string& sigma) {
  if (!(d.b < HalfInt{}) || !(d.e > -d.b))
    throw Error(ErrorCode::InvalidArgument,
                "delta(D+-) needs D = [-a, c] with 0 < a < c, got " + d.str());
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  TemperedSymbol t;
  t.kind = Kind::DeltaPM;
  t.sigma = sigma;
  t.base = Cusp{sigma};
  t.seg = d;
  t.sign = sign;
  return t;
}

TemperedSymbol TemperedSymbol::ind(std::vector<Segment> gammas, TemperedSymbol inner) {
  if (gammas.empty()) return inner;
  for (const auto& g : gammas)
    if (!g.is_symmetric())
      throw Error(ErrorCode::InvalidArgument, "induced tempered part needs symmetric segments");
  std::sort(gammas.begin(), gammas.end(), canonical_less);
  if (inner.kind == Kind::IndTemp) {
    auto merged = inner.gammas;
    merged.insert(merged.end(), gammas.begin(), gammas.end());
    TemperedSymbol base_inner = inner.parts.front();
    return ind(std::move(merged), std::move(base_inner));
  }
  TemperedSymbol t;
  t.kind = Kind::IndTemp;
  t.sigma = inner.sigma;
  t.base = Cusp{inner.sigma};
  t.gammas = std::move(gammas);
  t.parts = {std::move(inner)};
  return t;
}

TemperedSymbol TemperedSymbol::split(std::vector<TemperedSymbol> parts) {
  std::vector<TemperedSymbol> flat;
  std::string sigma;
  for (auto& p : parts) {
    if (sigma.empty()) sigma = p.sigma;
    if (p.sigma != sigma)
      throw Error(ErrorCode::IncompatibleTempered, "tempered parts over different sigma");
    if (p.kind == Kind::Split)
      flat.insert(flat.end(), p.parts.begin(), p.parts.end());
    else if (!p.is_cusp())
      flat.push_back(std::move(p));
  }
  std::set<LineId> seen;
  for (const auto& p : flat) {
    auto ls = p.lines();
    if (ls.size() != 1)
      throw Error(ErrorCode::IncompatibleTempered, "split parts must each live on one line");
    if (!seen.insert(ls.front()).second)
      throw Error(ErrorCode::IncompatibleTempered,
                  "two tempered parts on line '" + ls.front() + "'");
  }
  if (flat.empty()) return cusp(sigma);
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end(),
            [](const TemperedSymbol& x, const TemperedSymbol& y) { return x.lines() < y.lines(); });
  TemperedSymbol t;
  t.kind = Kind::Split;
  t.sigma = sigma;
  t.base = Cusp{sigma};
  t.parts = std::move(flat);
  return t;
}

std::vector<LineId> TemperedSymbol::lines() const {
  std::set<LineId> ids;
  switch (kind) {
    case Kind::Base:
      if (auto l = base_line(base)) ids.insert(*l);
      break;
    case Kind::TauPM:
    case Kind::DeltaPM:
      ids.insert(seg->line);
      break;
    case Kind::IndTemp:
      for (const auto& g : gammas) ids.insert(g.line);
      for (const auto& l : parts.front().lines()) ids.insert(l);
      break;
    case Kind::Split:
      for (const auto& p : parts)
        for (const auto& l : p.lines()) ids.insert(l);
      break;
  }
  return {ids.begin(), ids.end()};
}

std::int64_t TemperedSymbol::degree() const {
  switch (kind) {
    case Kind::Base: return base_degree(base);
    case Kind::TauPM:
    case Kind::DeltaPM: return seg->length();
    case Kind::IndTemp: {
      std::int64_t d = parts.front().degree();
      for (const auto& g : gammas) d += g.length();
      return d;
    }
    case Kind::Split: {
      std::int64_t d = 0;
      for (const auto& p : parts) d += p.degree();
      return d;
    }
  }
  return 0;
}

LanglandsDatum LanglandsDatum::make(Multisegment ms, TemperedSymbol temp) {
  for (const auto& s : ms)
    if (!(s.center() > HalfInt{}))
      throw Error(ErrorCode::InvalidArgument,
                  "Langlands data need positive centers, got " + s.str());
  return LanglandsDatum{std::move(ms), std::move(temp)};
}

std::vector<LineId> LanglandsDatum::lines() const {
  std::set<LineId> ids;
  for (const auto& s : ms) ids.insert(s.line);
  for (const auto& l : temp.lines()) ids.insert(l);
  return {ids.begin(), ids.end()};
}

TemperedSymbol classical_contragredient(const TemperedSymbol& t) {
  TemperedSymbol r = t;
  r.sigma = dual_sigma(t.sigma);
  std::visit([](auto& b) { b.sigma = dual_sigma(b.sigma); }, r.base);
  for (auto& p : r.parts) p = classical_contragredient(p);
  return r;
}

LanglandsDatum classical_contragredient(const LanglandsDatum& d) {
  return LanglandsDatum{d.ms, classical_contragredient(d.temp)};
}

// ---------------------------------------------------------------------------

namespace {

Exponents estar_of(const Multisegment& ms, std::int64_t total) {
  if (ms.lines().size() > 1)
    throw Error(ErrorCode::MultiLine, "e_* compares exponents on a single line");
  Exponents v;
  for (const auto& s : ms)
    for (std::int64_t i = 0; i < s.length(); ++i) v.push_back(s.center());
  if (static_cast<std::int64_t>(v.size()) > total)
    throw Error(ErrorCode::TotalTooSmall, "total " + std::to_string(total) +
                                              " is smaller than the support size " +
                                              std::to_string(v.size()));
  std::sort(v.begin(), v.end(), std::greater<>());
  v.resize(static_cast<std::size_t>(total), HalfInt{});
  return v;
}

}  // namespace

Exponents estar(const LanglandsDatum& d, std::int64_t total) {
  if (d.degree() > total)
    throw Error(ErrorCode::TotalTooSmall, "total " + std::to_string(total) +
                                              " is smaller than the datum size " +
                                              std::to_string(d.degree()));
  return estar_of(d.ms, total);
}

Exponents estar(const InducedSymbol& s, std::int64_t total) {
  if (s.gl.degree() + base_degree(s.base) > total)
    throw Error(ErrorCode::TotalTooSmall, "total is smaller than the symbol size");
  return estar_of(s.gl, total);
}

bool leq_estar(const Exponents& t1, const Exponents& t2) {
  if (t1.size() != t2.size())
    throw Error(ErrorCode::LengthMismatch, "e_* vectors of different lengths");
  HalfInt p1, p2;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    p1 += t1[i];
    p2 += t2[i];
    if (p1 > p2) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

void validate(const SubqDatum& d) {
  if (!(d.alpha > HalfInt{}))
    throw Error(ErrorCode::InvalidArgument, "the family needs alpha > 0");
  if (d.n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  // Walk the tiling from the bottom up.
  HalfInt next = d.alpha;
  auto take = [&](const Segment& s) {
    if (s.line != d.line)
      throw Error(ErrorCode::InvalidArgument, "block " + s.str() + " is off the line");
    if (s.b != next)
      throw Error(ErrorCode::InvalidArgument,
                  "blocks must tile [alpha, alpha+n] consecutively, top block first");
    next = s.e + 1;
  };
  if (d.bottom) take(*d.bottom);
  for (auto it = d.blocks.rbegin(); it != d.blocks.rend(); ++it) take(*it);
  if (next != d.alpha + (d.n + 1))
    throw Error(ErrorCode::InvalidArgument, "blocks do not cover [alpha, alpha+n]");
}

LanglandsDatum to_langlands(const SubqDatum& d, const std::string& sigma) {
  TemperedSymbol temp = d.bottom ? TemperedSymbol::of_base(StGen{sigma, d.line, d.alpha,
                                                                 d.bottom->length() - 1})
                                 : TemperedSymbol::cusp(sigma);
  return LanglandsDatum::make(Multisegment(d.blocks), std::move(temp));
}

std::optional<SubqDatum> from_langlands(const Context& ctx, const LanglandsDatum& d) {
  if (d.temp.kind != TemperedSymbol::Kind::Base) return std::nullopt;
  auto lines = d.lines();
  if (lines.size() != 1) return std::nullopt;
  const Line* line = ctx.find(lines.front());
  if (!line || !line->alpha || !(*line->alpha > HalfInt{})) return std::nullopt;
  SubqDatum s;
  s.line = line->id;
  s.alpha = *line->alpha;
  if (const auto* st = std::get_if<StGen>(&d.temp.base)) {
    if (st->a != s.alpha) return std::nullopt;
    s.bottom = Segment::make(s.line, st->a, st->a + st->n);
  } else if (!std::holds_alternative<Cusp>(d.temp.base)) {
    return std::nullopt;
  }
  // Langlands order (descending centers) is top-first for a tiling.
  s.blocks = d.ms.entries();
  std::int64_t total = d.degree();
  if (total == 0) return std::nullopt;
  s.n = total - 1;
  try {
    validate(s);
  } catch (const Error&) {
    return std::nullopt;
  }
  return s;
}

SubqDatum aubert_pair(const SubqDatum& d) {
  validate(d);
  std::vector<Segment> tiling = d.blocks;
  if (d.bottom) tiling.push_back(*d.bottom);
  Multisegment dual = mw_dual(Multisegment(tiling));
  std::vector<Segment> blocks = dual.entries();  // descending centers: top first
  SubqDatum r{d.line, d.alpha, d.n, {}, std::nullopt};
  if (d.bottom) {
    r.blocks = std::move(blocks);
  } else {
    r.bottom = blocks.back();
    blocks.pop_back();
    r.blocks = std::move(blocks);
  }
  validate(r);
  return r;
}

}  // namespace cuspline
