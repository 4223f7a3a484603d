#pragma once

// Exact scalars, segments, multisegments and formal sums shared by every
// other part of the library.
//
// Exponents live in (1/2)Z and are stored doubled. A segment [b,e] on a
// cuspidal line denotes the run nu^b rho, ..., nu^e rho; the empty segment is
// never materialized (functions that can produce it return std::optional).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cuspline {

enum class ErrorCode {
  InvalidArgument,
  InvalidSegment,
  UnsupportedLine,
  BasisMismatch,
  MultiLine,
  LengthMismatch,
  TotalTooSmall,
  WrongCase,
  HypothesisViolation,
  NotProjectable,
  IncompatibleTempered,
  ReducibilityMismatch,
  MalformedDatum,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// HalfInt

class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_doubled(std::int64_t doubled) {
    HalfInt h;
    h.doubled_ = doubled;
    return h;
  }
  static constexpr HalfInt from_int(std::int64_t value) {
    return from_doubled(2 * value);
  }
  // Accepts "3", "-2", "5/2", "-1/2". Throws Error on anything else.
  static HalfInt parse(std::string_view text);

  constexpr std::int64_t doubled() const { return doubled_; }
  constexpr bool is_integer() const { return doubled_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_doubled(-doubled_); }
  constexpr HalfInt operator+(HalfInt o) const {
    return from_doubled(doubled_ + o.doubled_);
  }
  constexpr HalfInt operator-(HalfInt o) const {
    return from_doubled(doubled_ - o.doubled_);
  }
  constexpr HalfInt operator+(std::int64_t k) const {
    return from_doubled(doubled_ + 2 * k);
  }
  constexpr HalfInt operator-(std::int64_t k) const {
    return from_doubled(doubled_ - 2 * k);
  }
  HalfInt& operator+=(HalfInt o) {
    doubled_ += o.doubled_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  std::int64_t doubled_ = 0;
};

// ---------------------------------------------------------------------------
// Lines and the ambient context

using LineId = std::string;

struct Line {
  LineId id;
  bool selfdual = true;
  std::optional<HalfInt> alpha;  // reducibility point with the ambient sigma

  auto operator<=>(const Line&) const = default;
};

class Context {
 public:
  Context() = default;
  Context(std::string sigma_id, std::vector<Line> lines);

  const std::string& sigma() const { return sigma_; }
  const std::vector<Line>& lines() const { return lines_; }
  const Line* find(const LineId& id) const;
  const Line& line(const LineId& id) const;  // throws UnsupportedLine
  bool has(const LineId& id) const { return find(id) != nullptr; }

  void add_line(Line line);
  void set_alpha(const LineId& id, HalfInt alpha);

 private:
  std::string sigma_ = "sigma";
  std::vector<Line> lines_;
};

// Name of the contragredient cuspidal representation of the classical group.
std::string dual_sigma(const std::string& sigma);

// ---------------------------------------------------------------------------
// Segments

struct Segment {
  LineId line;
  HalfInt b;
  HalfInt e;

  // Validating constructor: e - b must be a non-negative integer.
  static Segment make(LineId line, HalfInt b, HalfInt e);
  static Segment singleton(LineId line, HalfInt x) { return make(std::move(line), x, x); }

  std::int64_t length() const { return (e.doubled() - b.doubled()) / 2 + 1; }
  HalfInt center() const { return HalfInt::from_doubled((b.doubled() + e.doubled()) / 2); }
  bool contains(HalfInt x) const {
    return b <= x && x <= e && (x.doubled() - b.doubled()) % 2 == 0;
  }
  bool is_symmetric() const { return b == -e; }

  bool operator==(const Segment&) const = default;
  std::string str() const;
};

// Canonical order: descending center, then descending length, then line id.
bool canonical_less(const Segment& x, const Segment& y);
std::strong_ordering canonical_compare(const Segment& x, const Segment& y);
inline std::strong_ordering operator<=>(const Segment& x, const Segment& y) {
  return canonical_compare(x, y);
}

std::optional<Segment> make_segment_or_empty(const LineId& line, HalfInt b, HalfInt e);

Segment seg_dual(const Context& ctx, const Segment& s);
std::optional<Segment> seg_minus(const Segment& s);
inline HalfInt seg_center(const Segment& s) { return s.center(); }

// ---------------------------------------------------------------------------
// Support points

struct Point {
  LineId line;
  HalfInt x;
  auto operator<=>(const Point&) const = default;
};

// Sorted multiset of support points.
using Support = std::vector<Point>;

// ---------------------------------------------------------------------------
// Multisegments

class Multisegment {
 public:
  Multisegment() = default;
  Multisegment(std::vector<Segment> entries);
  Multisegment(std::initializer_list<Segment> entries)
      : Multisegment(std::vector<Segment>(entries)) {}

  const std::vector<Segment>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Total number of support points (the grading of R).
  std::int64_t degree() const;
  std::vector<LineId> lines() const;  // sorted, distinct

  Multisegment operator+(const Multisegment& o) const;
  Multisegment with(const Segment& s) const;

  bool operator==(const Multisegment& o) const { return entries_ == o.entries_; }
  std::strong_ordering operator<=>(const Multisegment& o) const;

  std::string str() const;

 private:
  std::vector<Segment> entries_;
};

Support support(const Multisegment& m);
Support support_union(const Support& a, const Support& b);
// a minus b as multisets; std::nullopt when b is not contained in a.
std::optional<Support> support_difference(const Support& a, const Support& b);
bool support_contains(const Support& s, const Point& p);
std::size_t support_count(const Support& s, const Point& p);
bool multiplicity_free(const Support& s);

// ---------------------------------------------------------------------------
// Formal sums: finitely supported Z-valued maps over an ordered key type.

using Coeff = std::int64_t;

template <class Key>
class FormalSum {
 public:
  using map_type = std::map<Key, Coeff>;

  FormalSum() = default;
  explicit FormalSum(const Key& key, Coeff c = 1) { add(key, c); }

  void add(const Key& key, Coeff c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(Key&& key, Coeff c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Coeff coeff(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? 0 : it->second;
  }

  const map_type& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
  friend FormalSum operator*(Coeff k, const FormalSum& a) {
    FormalSum r;
    if (k == 0) return r;
    for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, k * c);
    return r;
  }
  FormalSum operator-() const { return Coeff{-1} * *this; }

  bool nonnegative() const {
    for (const auto& [k, c] : terms_)
      if (c < 0) return false;
    return true;
  }
  // Coefficientwise comparison: *this <= o.
  bool leq(const FormalSum& o) const { return (o - *this).nonnegative(); }

  Coeff total() const {
    Coeff t = 0;
    for (const auto& [k, c] : terms_) t += c;
    return t;
  }

  bool operator==(const FormalSum&) const = default;

 private:
  map_type terms_;
};

}  // namespace cuspline
