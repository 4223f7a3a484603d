#include "cuspline/criteria.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cuspline;
using oracle::H;
using oracle::seg;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

GenericEntry sd(std::vector<Rational> ex, bool halfred = false, bool tau = false) {
  return GenericEntry{"d", std::nullopt, true, std::move(ex), halfred, tau};
}

struct Row {
  const char* name;
  GenericDatum datum;
  bool unitarizable;
  const char* failed;
};

}  // namespace

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(parse_rational("1/4") == R(1, 4));
  CHECK(parse_rational("-3/6") == R(-1, 2));
  CHECK(parse_rational("2") == R(2));
  CHECK(to_string(R(2, 8)) == "1/4");
  CHECK(to_string(R(3)) == "3");
  for (const char* bad : {"", "1/0", "x", "1/2x", "/3"}) CHECK_THROWS_AS(parse_rational(bad), Error);
}

TEST_CASE("generic criterion truth table") {
  // Each row is worked out by hand from conditions (1)-(3).
  std::vector<Row> rows = {
      {"no factors", {}, true, ""},
      {"unpaired non-selfdual factor", {GenericEntry{"d", "e", false, {R(1, 4)}, false, false}}, false, "1"},
      {"hermitian pair below 1/2",
       {GenericEntry{"d", "e", false, {R(1, 3)}, false, false},
        GenericEntry{"e", "d", false, {R(1, 3)}, false, false}},
       true, ""},
      {"hermitian pair at 3/5",
       {GenericEntry{"d", "e", false, {R(3, 5)}, false, false},
        GenericEntry{"e", "d", false, {R(3, 5)}, false, false}},
       false, "2"},
      {"reducible at 1/2, exponent exactly 1/2", {sd({R(1, 2)}, true)}, false, "2"},
      {"single 1/2 in the Barbasch range", {sd({R(1, 2)})}, true, ""},
      {"alpha_{k-1} = 1/2", {sd({R(1, 5), R(1, 2), R(1, 2)})}, false, "3a"},
      {"exponent 1 is out of range", {sd({R(1)})}, false, "3-order"},
      {"repeated beta", {sd({R(3, 5), R(3, 5)})}, false, "3-order"},
      {"one alpha above 1 - beta_1", {sd({R(1, 3), R(3, 4)})}, false, "3b"},
      {"two alphas above 1 - beta_1", {sd({R(1, 3), R(2, 5), R(3, 4)})}, true, ""},
      {"no alpha between consecutive betas", {sd({R(3, 5), R(7, 10)})}, false, "3c"},
      {"one alpha between consecutive betas", {sd({R(7, 20), R(3, 5), R(7, 10)})}, true, ""},
      {"tau reducible, k + l odd", {sd({R(1, 4)}, false, true)}, false, "3d"},
      {"tau reducible, k + l even", {sd({R(1, 4), R(1, 3)}, false, true)}, true, ""},
  };
  for (const auto& row : rows) {
    CAPTURE(row.name);
    GenericVerdict v = generic_unitarizable(row.datum);
    CHECK(v.unitarizable == row.unitarizable);
    CHECK(v.failed == row.failed);
    if (!row.unitarizable) CHECK(v.failed_label == row.datum.front().label);
  }
}

TEST_CASE("non-positive exponents are malformed") {
  try {
    generic_unitarizable({sd({R(0)})});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedDatum);
  }
  CHECK_THROWS_AS(generic_unitarizable({sd({R(1, 4)}), sd({R(1, 3)})}), Error);
}

TEST_CASE("reducibility of nu^(1/2) delta(D) x| 1 by parity") {
  // alpha not an integer: reducible iff card(D) odd.
  CHECK(halfred_from_parity(H(1), 1));
  CHECK_FALSE(halfred_from_parity(H(1), 2));
  CHECK(halfred_from_parity(H(3), 3));
  // alpha an integer: reducible iff card(D) even.
  CHECK(halfred_from_parity(H(2), 2));
  CHECK_FALSE(halfred_from_parity(H(2), 3));
  CHECK_FALSE(halfred_from_parity(H(0), 1));
  CHECK_THROWS_AS(halfred_from_parity(H(1), 0), Error);
}

TEST_CASE("reducibility of delta(D) x| tau") {
  Segment d = seg("rho", -1, 1);
  CHECK(tau_reducible(H(1), d, {}, {}));
  CHECK_FALSE(tau_reducible(H(1), d, {d}, {}));
  CHECK_FALSE(tau_reducible(H(1), d, {}, {d}));
  CHECK_FALSE(tau_reducible(H(3), d, {}, {}));
  CHECK_FALSE(tau_reducible(H(2), seg("rho", -3, 3), {}, {}));
}

TEST_CASE("descriptions by line produce labelled entries") {
  Context ctx("sigma", {Line{"rho", true, H(1)}, Line{"pi", true, H(2)}});
  GenericDescription desc;
  desc.factors = {{seg("rho", 0, 0), R(1, 4)}, {seg("rho", -1, 1), R(1, 3)}, {seg("pi", -2, 2), R(1, 5)}};
  GenericDatum gd = generic_datum(ctx, desc);
  REQUIRE(gd.size() == 3);
  std::map<std::string, GenericEntry> by;
  for (const auto& e : gd) by[e.label] = e;
  CHECK(by.at("[0]@rho").halfred);
  CHECK_FALSE(by.at("[-1/2,1/2]@rho").halfred);
  CHECK_FALSE(by.at("[-1,1]@pi").halfred);
  CHECK(by.at("[-1/2,1/2]@rho").tau_red);
  CHECK(by.at("[-1,1]@pi").tau_red);
  CHECK_FALSE(by.at("[0]@rho").tau_red);

  GenericVerdict v = decide_generic(ctx, desc);
  CHECK_FALSE(v.unitarizable);
  CHECK(v.failed == "3d");

  desc.tempered["rho"] = LineTempered{{seg("rho", -1, 1)}, {}};
  desc.tempered["pi"] = LineTempered{{}, {seg("pi", -2, 2)}};
  CHECK(decide_generic(ctx, desc).unitarizable);
  CHECK(decide_generic_by_line(ctx, desc).unitarizable);

  auto parts = generic_line_factor(ctx, desc);
  CHECK(parts.size() == 2);
  CHECK(parts.at("rho").factors.size() == 2);
  CHECK(parts.at("pi").tempered.count("pi") == 1);
}

TEST_CASE("descriptions reject asymmetric factors and foreign tempered data") {
  Context ctx("sigma", {Line{"rho", true, H(1)}, Line{"pi", true, H(2)}});
  GenericDescription bad;
  bad.factors = {{seg("rho", 0, 2), R(1, 4)}};
  CHECK_THROWS_AS(generic_datum(ctx, bad), Error);
  GenericDescription foreign;
  foreign.tempered["rho"] = LineTempered{{seg("pi", -2, 2)}, {}};
  CHECK_THROWS_AS(generic_line_factor(ctx, foreign), Error);
}

TEST_CASE("transport preserves the verdict") {
  Context ctx("sigma", {Line{"a", true, H(2)}, Line{"b", true, H(2)}, Line{"c", true, H(4)}});
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    GenericDescription d;
    int nf = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int j = 0; j < nf; ++j) {
      std::int64_t x2 = std::uniform_int_distribution<int>(0, 3)(rng) * 2;
      d.factors.push_back({Segment::make("a", H(-x2), H(x2)),
                           R(std::uniform_int_distribution<int>(1, 19)(rng), 20)});
    }
    if (rng() % 2) d.tempered["a"] = LineTempered{{seg("a", -2, 2)}, {}};
    GenericDescription t = transport_generic(ctx, d, "a", "b");
    GenericVerdict before = decide_generic(ctx, d);
    GenericVerdict after = decide_generic(ctx, t);
    CHECK(before.unitarizable == after.unitarizable);
    CHECK(before.failed == after.failed);
  }
  GenericDescription d;
  d.factors = {{seg("a", 0, 0), R(1, 4)}};
  CHECK_THROWS_AS(transport_generic(ctx, d, "a", "c"), Error);
  CHECK_THROWS_AS(transport_generic(ctx, d, "b", "a"), Error);
}
