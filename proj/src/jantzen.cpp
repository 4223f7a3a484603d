#include "cuspline/jantzen.hpp"

#include <algorithm>

namespace cuspline {

LinePartition LinePartition::make(const Context& ctx, std::set<LineId> part1,
                                  std::set<LineId> part2) {
  for (const auto& id : part1)
    if (part2.count(id))
      throw Error(ErrorCode::InvalidArgument, "line '" + id + "' lies in both parts");
  for (const auto& id : part1) ctx.line(id);
  for (const auto& id : part2) ctx.line(id);
  for (const auto& l : ctx.lines())
    if (!part1.count(l.id) && !part2.count(l.id))
      throw Error(ErrorCode::InvalidArgument, "line '" + l.id + "' is in neither part");
  return LinePartition{std::move(part1), std::move(part2)};
}

const std::set<LineId>& LinePartition::side(int s) const {
  if (s != 1 && s != 2) throw Error(ErrorCode::InvalidArgument, "side must be 1 or 2");
  return s == 1 ? part1 : part2;
}

const std::set<LineId>& LinePartition::other(int s) const { return side(s == 1 ? 2 : 1); }

namespace {

bool within(const std::vector<LineId>& lines, const std::set<LineId>& allowed) {
  return std::all_of(lines.begin(), lines.end(),
                     [&](const LineId& l) { return allowed.count(l) > 0; });
}

std::vector<LineId> symbol_lines(const InducedSymbol& s) {
  std::set<LineId> ids;
  for (const auto& x : s.gl) ids.insert(x.line);
  if (auto l = base_line(s.base)) ids.insert(*l);
  return {ids.begin(), ids.end()};
}

}  // namespace

TensorClass mustar_filtered(const Context& ctx, const ClassElt& y, const LinePartition& p,
                            int side) {
  const auto& left = p.side(side);
  const auto& right = p.other(side);
  TensorClass r;
  for (const auto& [pair, c] : mustar(ctx, y))
    if (within(pair.first.lines(), left) && within(symbol_lines(pair.second), right))
      r.add(pair, c);
  return r;
}

TensorGL Mstar_filtered(const Context& ctx, const GLElt& x, const LinePartition& p, int side) {
  const auto& left = p.side(side);
  const auto& right = p.other(side);
  TensorGL r;
  r.basis = Basis::Delta;
  for (const auto& [pair, c] : Mstar(ctx, x).sum)
    if (within(pair.first.lines(), left) && within(pair.second.lines(), right)) r.sum.add(pair, c);
  return r;
}

// ---------------------------------------------------------------------------

LanglandsDatum psi_combine(const LanglandsDatum& x1, const LanglandsDatum& x2) {
  if (x1.temp.sigma != x2.temp.sigma)
    throw Error(ErrorCode::IncompatibleTempered,
                "parts over different sigma: " + x1.temp.sigma + " vs " + x2.temp.sigma);
  for (const auto& l : x1.lines()) {
    auto l2 = x2.lines();
    if (std::find(l2.begin(), l2.end(), l) != l2.end())
      throw Error(ErrorCode::IncompatibleTempered, "both parts use line '" + l + "'");
  }
  return LanglandsDatum::make(x1.ms + x2.ms, TemperedSymbol::split({x1.temp, x2.temp}));
}

LanglandsDatum psi_combine(const SplitDatum& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to combine");
  auto it = parts.begin();
  LanglandsDatum acc = it->second;
  for (++it; it != parts.end(); ++it) acc = psi_combine(acc, it->second);
  return acc;
}

namespace {

TemperedSymbol project_tempered(const TemperedSymbol& t, const std::set<LineId>& lines) {
  using Kind = TemperedSymbol::Kind;
  if (t.kind == Kind::Split) {
    std::vector<TemperedSymbol> kept;
    for (const auto& part : t.parts) {
      TemperedSymbol q = project_tempered(part, lines);
      if (!q.is_cusp()) kept.push_back(std::move(q));
    }
    if (kept.empty()) return TemperedSymbol::cusp(t.sigma);
    return TemperedSymbol::split(std::move(kept));
  }
  auto ls = t.lines();
  if (ls.empty()) return t;
  if (ls.size() > 1)
    throw Error(ErrorCode::NotProjectable,
                "tempered part spans several lines and has no projection in the symbol set");
  return lines.count(ls.front()) ? t : TemperedSymbol::cusp(t.sigma);
}

}  // namespace

LanglandsDatum xi_project(const LanglandsDatum& d, const std::set<LineId>& lines) {
  std::vector<Segment> kept;
  for (const auto& s : d.ms)
    if (lines.count(s.line)) kept.push_back(s);
  return LanglandsDatum::make(Multisegment(std::move(kept)), project_tempered(d.temp, lines));
}

LanglandsDatum xi_project(const LanglandsDatum& d, const LinePartition& p, int side) {
  return xi_project(d, p.side(side));
}

InducedSymbol psi_induced(const InducedSymbol& y1, const InducedSymbol& y2) {
  const auto* c1 = std::get_if<Cusp>(&y1.base);
  const auto* c2 = std::get_if<Cusp>(&y2.base);
  if (c1 && c2) {
    if (c1->sigma != c2->sigma)
      throw Error(ErrorCode::IncompatibleTempered, "parts over different sigma");
    return InducedSymbol{y1.gl + y2.gl, y1.base};
  }
  if (c1 && base_sigma(y2.base) == c1->sigma) return InducedSymbol{y1.gl + y2.gl, y2.base};
  if (c2 && base_sigma(y1.base) == c2->sigma) return InducedSymbol{y1.gl + y2.gl, y1.base};
  throw Error(ErrorCode::IncompatibleTempered, "at most one part may carry a non-cuspidal base");
}

TensorClass psi_tensor(const TensorClass& t1, const TensorClass& t2) {
  TensorClass r;
  for (const auto& [p1, c1] : t1)
    for (const auto& [p2, c2] : t2)
      r.add(ClassPair{p1.first * p2.first, psi_induced(p1.second, p2.second)}, c1 * c2);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Segment relabel(const Segment& s, const LineId& to) { return Segment::make(to, s.b, s.e); }

TemperedSymbol transport_tempered(const TemperedSymbol& t, const LineId& to,
                                  const std::string& sigma) {
  TemperedSymbol r = t;
  r.sigma = sigma;
  std::visit(
      [&](auto& b) {
        b.sigma = sigma;
        if constexpr (!std::is_same_v<std::decay_t<decltype(b)>, Cusp>) b.line = to;
      },
      r.base);
  if (r.seg) r.seg = relabel(*r.seg, to);
  for (auto& g : r.gammas) g = relabel(g, to);
  for (auto& p : r.parts) p = transport_tempered(p, to, sigma);
  return r;
}

}  // namespace

LanglandsDatum transport_line(const Context& ctx, const LanglandsDatum& d, const LineId& from,
                              const LineId& to, const std::optional<std::string>& to_sigma) {
  const Line& lf = ctx.line(from);
  const Line& lt = ctx.line(to);
  if (!lf.alpha || !lt.alpha || *lf.alpha != *lt.alpha)
    throw Error(ErrorCode::ReducibilityMismatch,
                "lines '" + from + "' and '" + to + "' reduce at different points");
  if (*lf.alpha == HalfInt{})
    throw Error(ErrorCode::ReducibilityMismatch,
                "transport at alpha = 0 is not canonical and is not provided");
  if (!lf.selfdual || !lt.selfdual)
    throw Error(ErrorCode::UnsupportedLine, "transport needs selfdual lines");
  for (const auto& l : d.lines())
    if (l != from)
      throw Error(ErrorCode::InvalidArgument, "datum is not supported on line '" + from + "'");
  std::vector<Segment> ms;
  for (const auto& s : d.ms) ms.push_back(relabel(s, to));
  return LanglandsDatum::make(Multisegment(std::move(ms)),
                              transport_tempered(d.temp, to, to_sigma.value_or(d.temp.sigma)));
}

}  // namespace cuspline
