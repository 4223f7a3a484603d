#include "cuspline/selftest.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cuspline;
using oracle::H;
using oracle::seg;

namespace {

std::vector<Segment> segments_in(const LineId& line, int lo2, int hi2, int max_len) {
  std::vector<Segment> out;
  for (int b2 = lo2; b2 <= hi2; ++b2)
    for (int len = 1; len <= max_len && b2 + 2 * (len - 1) <= hi2; ++len)
      out.push_back(Segment::make(line, H(b2), H(b2 + 2 * (len - 1))));
  return out;
}

GLElt d(std::initializer_list<Segment> s) { return GLElt::key(Basis::Delta, Multisegment(s)); }
GLElt z(std::initializer_list<Segment> s) { return GLElt::key(Basis::Zeta, Multisegment(s)); }

Context one_line(std::int64_t alpha2 = 1) { return Context("sigma", {Line{"rho", true, H(alpha2)}}); }

}  // namespace

TEST_CASE("m* on a segment matches the top/bottom split formula") {
  for (Basis b : {Basis::Delta, Basis::Zeta})
    for (const auto& s : segments_in("rho", -6, 6, 6)) {
      TensorGL got = mstar_segment(s, b);
      CHECK(got.basis == b);
      auto want = oracle::mstar_segment(s, b);
      CHECK(got.sum.size() == want.size());
      for (const auto& [k, c] : want) CHECK(got.sum.coeff(k) == c);
    }
}

TEST_CASE("m*(delta([0,1])) lists top parts on the left") {
  TensorGL t = mstar(d({seg("rho", 0, 2)}));
  CHECK(t.sum.size() == 3);
  CHECK(t.sum.coeff({Multisegment{seg("rho", 2, 2)}, Multisegment{seg("rho", 0, 0)}}) == 1);
  CHECK(t.sum.coeff({Multisegment{}, Multisegment{seg("rho", 0, 2)}}) == 1);
  CHECK(t.sum.coeff({Multisegment{seg("rho", 0, 2)}, Multisegment{}}) == 1);
}

TEST_CASE("m* is multiplicative") {
  auto segs = segments_in("rho", -3, 3, 3);
  for (Basis b : {Basis::Delta, Basis::Zeta})
    for (std::size_t i = 0; i < segs.size(); i += 2)
      for (std::size_t j = 0; j < segs.size(); j += 3) {
        GLElt x = GLElt::key(b, Multisegment{segs[i]});
        GLElt y = GLElt::key(b, Multisegment{segs[j]});
        CHECK(mstar(gl_mul(x, y)) == tensor_mul(mstar(x), mstar(y)));
      }
}

TEST_CASE("m* of the unit is 1 (x) 1") {
  TensorGL t = mstar(GLElt::unit(Basis::Delta));
  CHECK(t.sum.size() == 1);
  CHECK(t.sum.coeff({Multisegment{}, Multisegment{}}) == 1);
}

TEST_CASE("mixing bases is rejected") {
  CHECK_THROWS_AS(gl_mul(d({seg("rho", 0, 2)}), z({seg("rho", 0, 0)})), Error);
  CHECK_THROWS_AS(d({seg("rho", 0, 2)}) + z({seg("rho", 0, 0)}), Error);
  try {
    gl_mul(d({seg("rho", 0, 2)}), z({seg("rho", 0, 0)}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BasisMismatch);
  }
}

TEST_CASE("M* on a segment matches the double-sum formula") {
  Context ctx = one_line();
  for (const auto& s : segments_in("rho", -5, 5, 5)) {
    TensorGL lit = Mstar(ctx, GLElt::key(Basis::Delta, Multisegment{s}));
    CHECK(lit == oracle::Mstar_segment(s));
    CHECK(Mstar_segment_closed(ctx, s).value == lit);
  }
}

TEST_CASE("M*(delta(D_u)) has delta(D_u) (x) 1 twice") {
  for (std::int64_t a2 = 1; a2 <= 6; ++a2) {
    Context ctx = one_line(a2);
    Segment du = seg("rho", -a2, a2);
    TensorGL t = oracle::Mstar_segment(du);
    CHECK(t.sum.coeff({Multisegment{du}, Multisegment{}}) == 2);
    CHECK(Mstar(ctx, GLElt::key(Basis::Delta, Multisegment{du})).sum.coeff(
              {Multisegment{du}, Multisegment{}}) == 2);
  }
}

TEST_CASE("M* is multiplicative on products of segments") {
  Context ctx = one_line();
  auto segs = segments_in("rho", -3, 3, 3);
  for (std::size_t i = 0; i < segs.size(); i += 3)
    for (std::size_t j = 1; j < segs.size(); j += 4) {
      GLElt x = d({segs[i]});
      GLElt y = d({segs[j]});
      CHECK(Mstar(ctx, gl_mul(x, y)) == tensor_mul(Mstar(ctx, x), Mstar(ctx, y)));
    }
}

TEST_CASE("M*_GL contracts m* with the contragredient") {
  Context ctx = one_line();
  for (const auto& s : segments_in("rho", -4, 4, 4)) {
    GLElt want{Basis::Delta, {}};
    for (HalfInt i = s.b - 1; i <= s.e; i = i + 1) {
      auto top = make_segment_or_empty("rho", i + 1, s.e);
      auto dual_low = make_segment_or_empty("rho", -i, -s.b);
      want = want + GLElt::key(Basis::Delta, oracle::ms_of({top, dual_low}));
    }
    CHECK(MstarGL(ctx, d({s})) == want);
  }
}

TEST_CASE("contragredient reflects segments") {
  Context ctx = one_line();
  CHECK(gl_contragredient(ctx, d({seg("rho", -1, 3)})) == d({seg("rho", -3, 1)}));
  CHECK(ms_contragredient(ctx, Multisegment{seg("rho", 0, 2), seg("rho", 4, 4)}) ==
        Multisegment{seg("rho", -2, 0), seg("rho", -4, -4)});
}

TEST_CASE("Zelevinsky involution agrees with a reference implementation") {
  for (const auto& m : all_multisegments("rho", H(-3), H(3), 5)) {
    if (m.empty()) continue;
    CHECK(mw_dual(m) == oracle::mw(m));
  }
}

TEST_CASE("Zelevinsky involution on small cases") {
  CHECK(mw_dual(Multisegment{seg("rho", 0, 4)}) ==
        Multisegment{seg("rho", 0, 0), seg("rho", 2, 2), seg("rho", 4, 4)});
  CHECK(mw_dual(Multisegment{seg("rho", 0, 0), seg("rho", 2, 2)}) ==
        Multisegment{seg("rho", 0, 2)});
  // Unlinked segments stay apart.
  CHECK(mw_dual(Multisegment{seg("rho", 0, 0), seg("rho", 4, 4)}) ==
        Multisegment{seg("rho", 0, 0), seg("rho", 4, 4)});
  CHECK(mw_dual(Multisegment{}) == Multisegment{});
}

TEST_CASE("multi-line Zelevinsky involution works per line") {
  Multisegment m{seg("rho", 0, 2), seg("pi", 1, 1)};
  CHECK_THROWS_AS(mw_dual(m), Error);
  CHECK(mw_dual_multiline(m) == Multisegment{seg("rho", 0, 0), seg("rho", 2, 2), seg("pi", 1, 1)});
  CHECK(restrict_to_line(m, "pi") == Multisegment{seg("pi", 1, 1)});
}

TEST_CASE("derivative of a Zelevinsky generator") {
  CHECK(derivative(z({seg("rho", 0, 2)})) == z({seg("rho", 0, 2)}) + z({seg("rho", 0, 0)}));
  CHECK(derivative(z({seg("rho", 0, 0)})) == z({seg("rho", 0, 0)}) + GLElt::unit(Basis::Zeta));
  GLElt x = z({seg("rho", 0, 2)});
  GLElt y = z({seg("rho", 2, 2)});
  CHECK(derivative(gl_mul(x, y)) == gl_mul(derivative(x), derivative(y)));
  CHECK_THROWS_AS(derivative(d({seg("rho", 0, 2)})), Error);
}

TEST_CASE("highest derivative drops every end") {
  GLElt x = z({seg("rho", 0, 2), seg("rho", 2, 4)});
  CHECK(highest_derivative(x) == z({seg("rho", 0, 0), seg("rho", 2, 2)}));
  CHECK(highest_derivative(z({seg("rho", 0, 0)})) == GLElt::unit(Basis::Zeta));
  CHECK(ms_minus(Multisegment{seg("rho", 0, 0), seg("rho", 0, 2)}) ==
        Multisegment{seg("rho", 0, 0)});
}
