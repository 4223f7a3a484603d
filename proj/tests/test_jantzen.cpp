#include "cuspline/jantzen.hpp"
#include "cuspline/selftest.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cuspline;
using oracle::H;
using oracle::seg;

namespace {

Context two_lines() {
  return Context("sigma", {Line{"rho1", true, H(1)}, Line{"rho2", true, H(2)}});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("line partitions are disjoint and cover the context") {
  Context ctx = two_lines();
  LinePartition p = LinePartition::make(ctx, {"rho1"}, {"rho2"});
  CHECK(p.side(1) == std::set<LineId>{"rho1"});
  CHECK(p.other(1) == std::set<LineId>{"rho2"});
  CHECK_THROWS_AS(LinePartition::make(ctx, {"rho1"}, {"rho1", "rho2"}), Error);
  CHECK_THROWS_AS(LinePartition::make(ctx, {"rho1"}, {}), Error);
  CHECK_THROWS_AS(LinePartition::make(ctx, {"rho1"}, {"rho2", "rho9"}), Error);
  CHECK_THROWS_AS(p.side(3), Error);
}

TEST_CASE("projection keeps the segments and tempered parts of one side") {
  Context ctx = two_lines();
  LinePartition p = LinePartition::make(ctx, {"rho1"}, {"rho2"});
  TemperedSymbol t1 = TemperedSymbol::of_base(StGen{"sigma", "rho1", H(1), 1});
  TemperedSymbol t2 = TemperedSymbol::tau(seg("rho2", -2, 2), 1, "sigma");
  LanglandsDatum d = LanglandsDatum::make(Multisegment{seg("rho1", 3, 3), seg("rho2", 2, 4)},
                                          TemperedSymbol::split({t1, t2}));
  LanglandsDatum x1 = xi_project(d, p, 1);
  LanglandsDatum x2 = xi_project(d, p, 2);
  CHECK(x1 == LanglandsDatum::make(Multisegment{seg("rho1", 3, 3)}, t1));
  CHECK(x2 == LanglandsDatum::make(Multisegment{seg("rho2", 2, 4)}, t2));
  CHECK(psi_combine(x1, x2) == d);
  CHECK(psi_combine(SplitDatum{{"a", x1}, {"b", x2}}) == d);
}

TEST_CASE("psi rejects overlapping or mismatched parts") {
  LanglandsDatum a = LanglandsDatum::make(Multisegment{seg("rho1", 1, 1)}, TemperedSymbol::cusp("sigma"));
  LanglandsDatum b = LanglandsDatum::make(Multisegment{seg("rho1", 3, 3)}, TemperedSymbol::cusp("sigma"));
  LanglandsDatum c = LanglandsDatum::make(Multisegment{seg("rho2", 1, 1)}, TemperedSymbol::cusp("tau"));
  CHECK(code_of([&] { psi_combine(a, b); }) == ErrorCode::IncompatibleTempered);
  CHECK(code_of([&] { psi_combine(a, c); }) == ErrorCode::IncompatibleTempered);
  CHECK_THROWS_AS(psi_combine(SplitDatum{}), Error);
}

TEST_CASE("a tempered part spanning two lines cannot be projected") {
  TemperedSymbol mixed = TemperedSymbol::ind({seg("rho2", -2, 2)},
                                             TemperedSymbol::of_base(StGen{"sigma", "rho1", H(1), 0}));
  LanglandsDatum d = LanglandsDatum::make({}, mixed);
  CHECK(code_of([&] { xi_project(d, std::set<LineId>{"rho1"}); }) == ErrorCode::NotProjectable);
}

TEST_CASE("random round trips with hand-rolled generators") {
  Context ctx("sigma", {Line{"rho1", true, H(1)}, Line{"rho2", true, H(2)}, Line{"rho3", true, H(3)}});
  LinePartition p = LinePartition::make(ctx, {"rho1", "rho3"}, {"rho2"});
  std::mt19937 rng(4242);
  for (int i = 0; i < 200; ++i) {
    LanglandsDatum a = random_datum(rng, ctx, "rho1");
    LanglandsDatum b = random_datum(rng, ctx, "rho2");
    LanglandsDatum c = random_datum(rng, ctx, "rho3");
    LanglandsDatum d = psi_combine(psi_combine(a, c), b);
    CHECK(xi_project(d, p, 1) == psi_combine(a, c));
    CHECK(xi_project(d, p, 2) == b);
    CHECK(xi_project(d, std::set<LineId>{"rho3"}) == c);
    CHECK(psi_combine(xi_project(d, p, 1), xi_project(d, p, 2)) == d);
  }
}

TEST_CASE("filtered M* of a one-sided element keeps the trivial right factors") {
  Context ctx = two_lines();
  LinePartition p = LinePartition::make(ctx, {"rho1"}, {"rho2"});
  for (const auto& m : all_multisegments("rho1", H(-2), H(2), 3)) {
    GLElt x = GLElt::key(Basis::Delta, m);
    TensorGL want;
    want.basis = Basis::Delta;
    for (const auto& [k, c] : Mstar(ctx, x).sum)
      if (k.second.empty()) want.sum.add(k, c);
    CHECK(Mstar_filtered(ctx, x, p, 1) == want);
    TensorGL other = Mstar_filtered(ctx, x, p, 2);
    for (const auto& [k, c] : other.sum) CHECK(k.first.empty());
  }
}

TEST_CASE("psi on induced symbols is compatible with mu*") {
  Context ctx = two_lines();
  std::mt19937 rng(77);
  for (int i = 0; i < 40; ++i) {
    Multisegment m1 = oracle::random_ms(rng, {"rho1"}, 2, 2);
    Multisegment m2 = oracle::random_ms(rng, {"rho2"}, 2, 2);
    InducedSymbol y1{m1, Cusp{"sigma"}};
    InducedSymbol y2{m2, Cusp{"sigma"}};
    TensorClass lhs = mustar(ctx, class_key(psi_induced(y1, y2)));
    TensorClass rhs = psi_tensor(mustar(ctx, class_key(y1)), mustar(ctx, class_key(y2)));
    CHECK(lhs == rhs);
  }
  InducedSymbol st{{}, StGen{"sigma", "rho1", H(1), 0}};
  InducedSymbol st2{{}, StGen{"sigma", "rho2", H(2), 0}};
  CHECK_THROWS_AS(psi_induced(st, st2), Error);
  CHECK(psi_induced(st, InducedSymbol{Multisegment{seg("rho2", 2, 2)}, Cusp{"sigma"}}).base ==
        st.base);
}

TEST_CASE("transport relabels the line and keeps the shape") {
  Context ctx("sigma", {Line{"a", true, H(1)}, Line{"b", true, H(1)}, Line{"c", true, H(3)},
                        Line{"z", true, H(0)}, Line{"w", true, H(0)}, Line{"n", false, H(1)}});
  LanglandsDatum d = LanglandsDatum::make(
      Multisegment{seg("a", 1, 3)},
      TemperedSymbol::ind({seg("a", -3, 3)}, TemperedSymbol::of_base(StGen{"sigma", "a", H(1), 0})));
  LanglandsDatum t = transport_line(ctx, d, "a", "b");
  CHECK(t.lines() == std::vector<LineId>{"b"});
  CHECK(t.degree() == d.degree());
  CHECK(transport_line(ctx, t, "b", "a") == d);
  CHECK(transport_line(ctx, d, "a", "b", std::string("s2")).temp.sigma == "s2");

  CHECK(code_of([&] { transport_line(ctx, d, "a", "c"); }) == ErrorCode::ReducibilityMismatch);
  CHECK(code_of([&] { transport_line(ctx, LanglandsDatum::make({}, TemperedSymbol::cusp("sigma")), "z", "w"); }) ==
        ErrorCode::ReducibilityMismatch);
  CHECK(code_of([&] { transport_line(ctx, d, "a", "n"); }) == ErrorCode::UnsupportedLine);
  CHECK(code_of([&] { transport_line(ctx, t, "a", "b"); }) == ErrorCode::InvalidArgument);
}
