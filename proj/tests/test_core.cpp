#include "doctest.h"
#include "oracles.hpp"

using namespace cuspline;
using oracle::H;
using oracle::seg;

TEST_CASE("HalfInt parses integers and halves") {
  CHECK(HalfInt::parse("3").doubled() == 6);
  CHECK(HalfInt::parse("-2").doubled() == -4);
  CHECK(HalfInt::parse("5/2").doubled() == 5);
  CHECK(HalfInt::parse("-1/2").doubled() == -1);
  CHECK(HalfInt::parse("4/2").doubled() == 4);
  CHECK(HalfInt::parse("0").doubled() == 0);
  for (const char* bad : {"", "1/3", "x", "1/", "/2", "1.5", "1/2/2"})
    CHECK_THROWS_AS(HalfInt::parse(bad), Error);
}

TEST_CASE("HalfInt prints fractions with denominator 2") {
  CHECK(H(3).str() == "3/2");
  CHECK(H(-1).str() == "-1/2");
  CHECK(H(4).str() == "2");
  CHECK(H(0).str() == "0");
  for (std::int64_t d = -9; d <= 9; ++d) CHECK(HalfInt::parse(H(d).str()) == H(d));
}

TEST_CASE("HalfInt arithmetic") {
  CHECK(H(1) + H(1) == H(2));
  CHECK(H(1) + 1 == H(3));
  CHECK(H(1) - 1 == H(-1));
  CHECK(-H(3) == H(-3));
  CHECK(H(1) < H(2));
  CHECK(H(2).is_integer());
  CHECK_FALSE(H(3).is_integer());
}

TEST_CASE("segments validate their endpoints") {
  CHECK_NOTHROW(seg("rho", -1, 3));
  CHECK_THROWS_WITH_AS(seg("rho", 0, 1), doctest::Contains("invalid segment"), Error);
  CHECK_THROWS_AS(seg("rho", 2, 0), Error);
  try {
    seg("rho", 3, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSegment);
  }
  Segment s = seg("rho", -1, 3);
  CHECK(s.length() == 3);
  CHECK(s.center() == H(1));
  CHECK(s.contains(H(1)));
  CHECK_FALSE(s.contains(H(0)));
  CHECK_FALSE(s.contains(H(5)));
  CHECK(s.str() == "[-1/2,3/2]@rho");
  CHECK(seg("rho", 2, 2).str() == "[1]@rho");
  CHECK(seg("rho", -3, 3).is_symmetric());
  CHECK_FALSE(seg("rho", -1, 3).is_symmetric());
}

TEST_CASE("empty segments are not materialized") {
  CHECK_FALSE(make_segment_or_empty("rho", H(2), H(0)).has_value());
  CHECK(make_segment_or_empty("rho", H(2), H(2)).has_value());
  CHECK_FALSE(seg_minus(seg("rho", 2, 2)).has_value());
  CHECK(*seg_minus(seg("rho", 0, 4)) == seg("rho", 0, 2));
}

TEST_CASE("seg_dual reflects endpoints on a selfdual line") {
  Context ctx("sigma", {Line{"rho", true, H(1)}});
  CHECK(seg_dual(ctx, seg("rho", -1, 3)) == seg("rho", -3, 1));
  CHECK(seg_dual(ctx, seg("rho", -3, 3)) == seg("rho", -3, 3));
}

TEST_CASE("canonical order: descending center, then descending length") {
  Segment a = seg("rho", 2, 2);   // center 1
  Segment b = seg("rho", 0, 4);   // center 1, longer
  Segment c = seg("rho", 4, 4);   // center 2
  CHECK(canonical_less(c, a));
  CHECK(canonical_less(b, a));
  CHECK_FALSE(canonical_less(a, a));
  Multisegment m{a, b, c};
  REQUIRE(m.size() == 3);
  CHECK(m.entries()[0] == c);
  CHECK(m.entries()[1] == b);
  CHECK(m.entries()[2] == a);
}

TEST_CASE("multisegment degree, lines and sums") {
  Multisegment m{seg("rho", 0, 4), seg("pi", 1, 1)};
  CHECK(m.degree() == 4);
  CHECK(m.lines() == std::vector<LineId>{"pi", "rho"});
  Multisegment n{seg("rho", 2, 2)};
  CHECK((m + n).degree() == 5);
  CHECK(m.with(seg("rho", 2, 2)) == m + n);
  CHECK(Multisegment{}.empty());
  CHECK(Multisegment{}.degree() == 0);
}

TEST_CASE("support multisets") {
  Multisegment m{seg("rho", 0, 2), seg("rho", 2, 4)};
  Support s = support(m);
  CHECK(s.size() == 4);
  CHECK(support_count(s, Point{"rho", H(2)}) == 2);
  CHECK(support_contains(s, Point{"rho", H(4)}));
  CHECK_FALSE(support_contains(s, Point{"rho", H(6)}));
  CHECK_FALSE(multiplicity_free(s));
  CHECK(multiplicity_free(support(Multisegment{seg("rho", 0, 4)})));

  Support sub = support(Multisegment{seg("rho", 2, 2)});
  auto diff = support_difference(s, sub);
  REQUIRE(diff.has_value());
  CHECK(diff->size() == 3);
  CHECK_FALSE(support_difference(sub, s).has_value());
  CHECK(support_union(sub, sub).size() == 2);
}

TEST_CASE("formal sums cancel and compare") {
  FormalSum<int> a;
  a.add(1, 2);
  a.add(2, -1);
  FormalSum<int> b(1, -2);
  FormalSum<int> c = a + b;
  CHECK(c.size() == 1);
  CHECK(c.coeff(2) == -1);
  CHECK(c.coeff(1) == 0);
  CHECK((a - a).empty());
  CHECK((3 * a).coeff(1) == 6);
  CHECK((-a).coeff(2) == 1);
  CHECK(a.total() == 1);
  CHECK_FALSE(a.nonnegative());
  FormalSum<int> p(1, 1);
  FormalSum<int> q(1, 2);
  q.add(3, 1);
  CHECK(p.leq(q));
  CHECK_FALSE(q.leq(p));
}

TEST_CASE("context rejects duplicate and negative lines") {
  Context ctx("sigma", {Line{"rho", true, H(1)}});
  CHECK(ctx.has("rho"));
  CHECK_FALSE(ctx.has("pi"));
  CHECK_THROWS_AS(ctx.add_line(Line{"rho", true, std::nullopt}), Error);
  CHECK_THROWS_AS(ctx.add_line(Line{"pi", true, H(-1)}), Error);
  CHECK_THROWS_AS(ctx.line("pi"), Error);
  ctx.set_alpha("rho", H(3));
  CHECK(*ctx.line("rho").alpha == H(3));
  CHECK_THROWS_AS(ctx.set_alpha("nope", H(1)), Error);
}

TEST_CASE("dual sigma toggles a trailing tilde") {
  CHECK(dual_sigma("sigma") == "sigma~");
  CHECK(dual_sigma("sigma~") == "sigma");
}

TEST_CASE("error codes have names") {
  CHECK(to_string(ErrorCode::HypothesisViolation) == "hypothesis-violation");
  CHECK(to_string(ErrorCode::MalformedDatum) == "malformed-datum");
}
