#include "cuspline/core.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace cuspline {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidSegment: return "invalid-segment";
    case ErrorCode::UnsupportedLine: return "unsupported-line";
    case ErrorCode::BasisMismatch: return "basis-mismatch";
    case ErrorCode::MultiLine: return "multi-line";
    case ErrorCode::LengthMismatch: return "length-mismatch";
    case ErrorCode::TotalTooSmall: return "total-too-small";
    case ErrorCode::WrongCase: return "wrong-case";
    case ErrorCode::HypothesisViolation: return "hypothesis-violation";
    case ErrorCode::NotProjectable: return "not-projectable";
    case ErrorCode::IncompatibleTempered: return "incompatible-tempered";
    case ErrorCode::ReducibilityMismatch: return "reducibility-mismatch";
    case ErrorCode::MalformedDatum: return "malformed-datum";
  }
  return "unknown";
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (auto v = parse_int(text)) return from_int(*v);
  } else {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (num && den && *den == 2) return from_doubled(*num);
    if (num && den && *den == 1) return from_int(*num);
  }
  throw Error(ErrorCode::InvalidArgument,
              "not a half-integer: '" + std::string(text) + "'");
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(doubled_ / 2);
  return std::to_string(doubled_) + "/2";
}

// ---------------------------------------------------------------------------

Context::Context(std::string sigma_id, std::vector<Line> lines)
    : sigma_(std::move(sigma_id)) {
  for (auto& l : lines) add_line(std::move(l));
}

const Line* Context::find(const LineId& id) const {
  for (const auto& l : lines_)
    if (l.id == id) return &l;
  return nullptr;
}

const Line& Context::line(const LineId& id) const {
  if (const Line* l = find(id)) return *l;
  throw Error(ErrorCode::UnsupportedLine, "unknown line '" + id + "'");
}

void Context::add_line(Line line) {
  if (line.id.empty()) throw Error(ErrorCode::InvalidArgument, "empty line id");
  if (find(line.id))
    throw Error(ErrorCode::InvalidArgument, "duplicate line id '" + line.id + "'");
  if (line.alpha && *line.alpha < HalfInt{})
    throw Error(ErrorCode::InvalidArgument,
                "reducibility point of '" + line.id + "' must be >= 0");
  lines_.push_back(std::move(line));
}

void Context::set_alpha(const LineId& id, HalfInt alpha) {
  if (alpha < HalfInt{})
    throw Error(ErrorCode::InvalidArgument, "reducibility point must be >= 0");
  for (auto& l : lines_)
    if (l.id == id) {
      l.alpha = alpha;
      return;
    }
  throw Error(ErrorCode::UnsupportedLine, "unknown line '" + id + "'");
}

std::string dual_sigma(const std::string& sigma) {
  if (sigma.size() > 1 && sigma.back() == '~') return sigma.substr(0, sigma.size() - 1);
  return sigma + "~";
}

// ---------------------------------------------------------------------------

Segment Segment::make(LineId line, HalfInt b, HalfInt e) {
  auto diff = e.doubled() - b.doubled();
  if (diff < 0 || diff % 2 != 0)
    throw Error(ErrorCode::InvalidSegment,
                "invalid segment [" + b.str() + "," + e.str() + "]");
  return Segment{std::move(line), b, e};
}

std::string Segment::str() const {
  if (b == e) return "[" + b.str() + "]@" + line;
  return "[" + b.str() + "," + e.str() + "]@" + line;
}

std::strong_ordering canonical_compare(const Segment& x, const Segment& y) {
  auto cx = x.b.doubled() + x.e.doubled();
  auto cy = y.b.doubled() + y.e.doubled();
  if (cx != cy) return cy <=> cx;  // descending center
  if (x.e != y.e) return y.e <=> x.e;  // same center: longer first
  return x.line <=> y.line;
}

bool canonical_less(const Segment& x, const Segment& y) {
  return canonical_compare(x, y) < 0;
}

std::optional<Segment> make_segment_or_empty(const LineId& line, HalfInt b, HalfInt e) {
  if (e < b) return std::nullopt;
  return Segment::make(line, b, e);
}

Segment seg_dual(const Context& ctx, const Segment& s) {
  if (!ctx.line(s.line).selfdual)
    throw Error(ErrorCode::UnsupportedLine,
                "contragredient needs a selfdual line, '" + s.line + "' is not");
  return Segment{s.line, -s.e, -s.b};
}

std::optional<Segment> seg_minus(const Segment& s) {
  if (s.b == s.e) return std::nullopt;
  return Segment{s.line, s.b, s.e - 1};
}

// ---------------------------------------------------------------------------

Multisegment::Multisegment(std::vector<Segment> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), canonical_less);
}

std::int64_t Multisegment::degree() const {
  std::int64_t d = 0;
  for (const auto& s : entries_) d += s.length();
  return d;
}

std::vector<LineId> Multisegment::lines() const {
  std::set<LineId> ids;
  for (const auto& s : entries_) ids.insert(s.line);
  return {ids.begin(), ids.end()};
}

Multisegment Multisegment::operator+(const Multisegment& o) const {
  if (o.empty()) return *this;
  if (empty()) return o;
  Multisegment r;
  r.entries_.reserve(entries_.size() + o.entries_.size());
  std::merge(entries_.begin(), entries_.end(), o.entries_.begin(), o.entries_.end(),
             std::back_inserter(r.entries_), canonical_less);
  return r;
}

Multisegment Multisegment::with(const Segment& s) const {
  Multisegment r = *this;
  auto pos = std::upper_bound(r.entries_.begin(), r.entries_.end(), s, canonical_less);
  r.entries_.insert(pos, s);
  return r;
}

std::strong_ordering Multisegment::operator<=>(const Multisegment& o) const {
  return std::lexicographical_compare_three_way(
      entries_.begin(), entries_.end(), o.entries_.begin(), o.entries_.end(),
      canonical_compare);
}

std::string Multisegment::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].str();
  }
  return out + "}";
}

Support support(const Multisegment& m) {
  Support pts;
  for (const auto& s : m)
    for (HalfInt x = s.b; x <= s.e; x = x + 1) pts.push_back({s.line, x});
  std::sort(pts.begin(), pts.end());
  return pts;
}

Support support_union(const Support& a, const Support& b) {
  Support r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::optional<Support> support_difference(const Support& a, const Support& b) {
  if (!std::includes(a.begin(), a.end(), b.begin(), b.end())) return std::nullopt;
  Support r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool support_contains(const Support& s, const Point& p) {
  return std::binary_search(s.begin(), s.end(), p);
}

std::size_t support_count(const Support& s, const Point& p) {
  auto [lo, hi] = std::equal_range(s.begin(), s.end(), p);
  return static_cast<std::size_t>(hi - lo);
}

bool multiplicity_free(const Support& s) {
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace cuspline
