#include "cuspline/gl_hopf.hpp"

#include <algorithm>
#include <limits>

namespace cuspline {

std::string_view to_string(Basis b) { return b == Basis::Delta ? "delta" : "zeta"; }

namespace {

void require_same(Basis a, Basis b) {
  if (a != b)
    throw Error(ErrorCode::BasisMismatch, std::string("basis mismatch: ") +
                                              std::string(to_string(a)) + " vs " +
                                              std::string(to_string(b)));
}

void require_zeta(const GLElt& x, const char* what) {
  if (x.basis != Basis::Zeta)
    throw Error(ErrorCode::BasisMismatch, std::string(what) + " is defined on the zeta basis only");
}

TensorGL tensor_product_of(const std::vector<TensorGL>& factors, Basis basis) {
  TensorGL acc;
  acc.basis = basis;
  acc.sum.add(MsPair{}, 1);
  for (const auto& f : factors) acc = tensor_mul(acc, f);
  return acc;
}

}  // namespace

GLElt GLElt::unit(Basis b) { return key(b, Multisegment{}); }

GLElt GLElt::key(Basis b, Multisegment m, Coeff c) {
  GLElt x;
  x.basis = b;
  x.sum.add(std::move(m), c);
  return x;
}

GLElt operator+(const GLElt& x, const GLElt& y) {
  require_same(x.basis, y.basis);
  return GLElt{x.basis, x.sum + y.sum};
}

GLElt operator-(const GLElt& x, const GLElt& y) {
  require_same(x.basis, y.basis);
  return GLElt{x.basis, x.sum - y.sum};
}

GLElt operator*(Coeff k, const GLElt& x) { return GLElt{x.basis, k * x.sum}; }

GLElt gl_mul(const GLElt& x, const GLElt& y) {
  require_same(x.basis, y.basis);
  GLElt r;
  r.basis = x.basis;
  for (const auto& [kx, cx] : x.sum)
    for (const auto& [ky, cy] : y.sum) r.sum.add(kx + ky, cx * cy);
  return r;
}

TensorGL operator+(const TensorGL& x, const TensorGL& y) {
  require_same(x.basis, y.basis);
  return TensorGL{x.basis, x.sum + y.sum};
}

TensorGL operator-(const TensorGL& x, const TensorGL& y) {
  require_same(x.basis, y.basis);
  return TensorGL{x.basis, x.sum - y.sum};
}

TensorGL operator*(Coeff k, const TensorGL& x) { return TensorGL{x.basis, k * x.sum}; }

TensorGL tensor_mul(const TensorGL& x, const TensorGL& y) {
  require_same(x.basis, y.basis);
  TensorGL r;
  r.basis = x.basis;
  for (const auto& [kx, cx] : x.sum)
    for (const auto& [ky, cy] : y.sum)
      r.sum.add(MsPair{kx.first + ky.first, kx.second + ky.second}, cx * cy);
  return r;
}

// ---------------------------------------------------------------------------

TensorGL mstar_segment(const Segment& s, Basis basis) {
  TensorGL r;
  r.basis = basis;
  // i runs over b-1 .. e; [b,i] and [i+1,e] split the segment.
  for (HalfInt i = s.b - 1; i <= s.e; i = i + 1) {
    Multisegment lower, upper;
    if (auto lo = make_segment_or_empty(s.line, s.b, i)) lower = Multisegment{*lo};
    if (auto up = make_segment_or_empty(s.line, i + 1, s.e)) upper = Multisegment{*up};
    if (basis == Basis::Delta)
      r.sum.add(MsPair{std::move(upper), std::move(lower)}, 1);
    else
      r.sum.add(MsPair{std::move(lower), std::move(upper)}, 1);
  }
  return r;
}

namespace {

TensorGL mstar_key(const Multisegment& m, Basis basis) {
  std::vector<TensorGL> factors;
  factors.reserve(m.size());
  for (const auto& s : m) factors.push_back(mstar_segment(s, basis));
  return tensor_product_of(factors, basis);
}

}  // namespace

TensorGL mstar(const GLElt& x) {
  TensorGL r;
  r.basis = x.basis;
  for (const auto& [key, c] : x.sum) r = r + c * mstar_key(key, x.basis);
  return r;
}

Tensor3GL mstar_left_iterate(const GLElt& x) {
  Tensor3GL r;
  r.basis = x.basis;
  for (const auto& [pair, c] : mstar(x).sum)
    for (const auto& [inner, ci] : mstar_key(pair.first, x.basis).sum)
      r.sum.add(MsTriple{inner.first, inner.second, pair.second}, c * ci);
  return r;
}

Tensor3GL mstar_right_iterate(const GLElt& x) {
  Tensor3GL r;
  r.basis = x.basis;
  for (const auto& [pair, c] : mstar(x).sum)
    for (const auto& [inner, ci] : mstar_key(pair.second, x.basis).sum)
      r.sum.add(MsTriple{pair.first, inner.first, inner.second}, c * ci);
  return r;
}

// ---------------------------------------------------------------------------

Multisegment ms_contragredient(const Context& ctx, const Multisegment& m) {
  std::vector<Segment> out;
  out.reserve(m.size());
  for (const auto& s : m) out.push_back(seg_dual(ctx, s));
  return Multisegment(std::move(out));
}

GLElt gl_contragredient(const Context& ctx, const GLElt& x) {
  GLElt r;
  r.basis = x.basis;
  for (const auto& [key, c] : x.sum) r.sum.add(ms_contragredient(ctx, key), c);
  return r;
}

TensorGL Mstar(const Context& ctx, const GLElt& x) {
  if (x.basis != Basis::Delta)
    throw Error(ErrorCode::BasisMismatch, "M* is defined on the delta basis only");
  TensorGL r;
  r.basis = Basis::Delta;
  for (const auto& [key, c] : x.sum) {
    // m*: key -> sum X (x) Y ; kappa: Y (x) X ; (~ (x) m*): Y~ (x) X1 (x) X2 ;
    // (m (x) id): Y~ X1 (x) X2.
    for (const auto& [xy, cxy] : mstar_key(key, Basis::Delta).sum) {
      Multisegment ydual = ms_contragredient(ctx, xy.second);
      for (const auto& [x12, c12] : mstar_key(xy.first, Basis::Delta).sum)
        r.sum.add(MsPair{ydual + x12.first, x12.second}, c * cxy * c12);
    }
  }
  return r;
}

ClosedExpansion Mstar_segment_closed(const Context& ctx, const Segment& seg) {
  if (!ctx.line(seg.line).selfdual)
    throw Error(ErrorCode::UnsupportedLine, "closed M* needs a selfdual line");
  ClosedExpansion out;
  out.value.basis = Basis::Delta;
  const HalfInt a = seg.b, c = seg.e;
  for (HalfInt s = a - 1; s <= c; s = s + 1) {
    for (HalfInt t = s; t <= c; t = t + 1) {
      std::vector<Segment> left;
      if (auto l1 = make_segment_or_empty(seg.line, -s, -a)) left.push_back(*l1);
      if (auto l2 = make_segment_or_empty(seg.line, t + 1, c)) left.push_back(*l2);
      Multisegment right;
      if (auto r1 = make_segment_or_empty(seg.line, s + 1, t)) right = Multisegment{*r1};
      out.value.sum.add(MsPair{Multisegment(std::move(left)), std::move(right)}, 1);
      ++out.raw_terms;
    }
  }
  return out;
}

GLElt MstarGL(const Context& ctx, const GLElt& x) {
  GLElt r;
  r.basis = x.basis;
  for (const auto& [pair, c] : mstar(x).sum)
    r.sum.add(pair.first + ms_contragredient(ctx, pair.second), c);
  return r;
}

// ---------------------------------------------------------------------------

GLElt derivative(const GLElt& x) {
  require_zeta(x, "the derivative");
  GLElt r;
  r.basis = Basis::Zeta;
  for (const auto& [key, c] : x.sum) {
    FormalSum<Multisegment> acc{Multisegment{}};
    for (const auto& s : key) {
      FormalSum<Multisegment> next;
      auto minus = seg_minus(s);
      for (const auto& [k, ck] : acc) {
        next.add(k.with(s), ck);
        next.add(minus ? k.with(*minus) : k, ck);
      }
      acc = std::move(next);
    }
    r.sum += c * acc;
  }
  return r;
}

GLElt highest_derivative(const GLElt& x) {
  require_zeta(x, "the highest derivative");
  if (x.sum.empty())
    throw Error(ErrorCode::InvalidArgument, "highest derivative of zero is undefined");
  GLElt d = derivative(x);
  std::int64_t lowest = std::numeric_limits<std::int64_t>::max();
  for (const auto& [key, c] : d.sum) lowest = std::min(lowest, key.degree());
  GLElt r;
  r.basis = Basis::Zeta;
  for (const auto& [key, c] : d.sum)
    if (key.degree() == lowest) r.sum.add(key, c);
  return r;
}

Multisegment ms_minus(const Multisegment& m) {
  std::vector<Segment> out;
  for (const auto& s : m)
    if (auto t = seg_minus(s)) out.push_back(*t);
  return Multisegment(std::move(out));
}

// ---------------------------------------------------------------------------

Multisegment mw_dual(const Multisegment& m) {
  if (m.lines().size() > 1)
    throw Error(ErrorCode::MultiLine, "mw_dual expects a single-line multisegment");
  if (m.empty()) return m;
  const LineId line = m.entries().front().line;

  struct Piece {
    HalfInt b, e;
  };
  std::vector<Piece> work;
  for (const auto& s : m) work.push_back({s.b, s.e});

  std::vector<Segment> out;
  while (!work.empty()) {
    // Start from the largest end, shortest segment among those.
    std::size_t start = 0;
    for (std::size_t i = 1; i < work.size(); ++i) {
      if (work[i].e > work[start].e || (work[i].e == work[start].e && work[i].b > work[start].b))
        start = i;
    }
    std::vector<std::size_t> chain{start};
    HalfInt end = work[start].e;
    HalfInt cur_b = work[start].b;
    HalfInt cur_e = end;
    for (;;) {
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i].e != cur_e - 1 || !(work[i].b < cur_b)) continue;
        if (!pick || work[i].b > work[*pick].b) pick = i;
      }
      if (!pick) break;
      chain.push_back(*pick);
      cur_b = work[*pick].b;
      cur_e = work[*pick].e;
    }
    const auto r = static_cast<std::int64_t>(chain.size());
    out.push_back(Segment::make(line, end - (r - 1), end));

    for (std::size_t idx : chain) work[idx].e = work[idx].e - 1;
    std::vector<Piece> rest;
    for (const auto& p : work)
      if (!(p.e < p.b)) rest.push_back(p);
    work = std::move(rest);
  }
  return Multisegment(std::move(out));
}

Multisegment restrict_to_line(const Multisegment& m, const LineId& line) {
  std::vector<Segment> out;
  for (const auto& s : m)
    if (s.line == line) out.push_back(s);
  return Multisegment(std::move(out));
}

Multisegment mw_dual_multiline(const Multisegment& m) {
  Multisegment r;
  for (const auto& line : m.lines()) r = r + mw_dual(restrict_to_line(m, line));
  return r;
}

}  // namespace cuspline
