#include "cuspline/selftest.hpp"

#include <chrono>
#include <functional>
#include <set>

namespace cuspline {

namespace {

HalfInt H(std::int64_t doubled) { return HalfInt::from_doubled(doubled); }

void enumerate_rec(const std::vector<Segment>& segs, std::size_t from, std::int64_t budget,
                   std::vector<Segment>& cur, std::vector<Multisegment>& out) {
  out.emplace_back(cur);
  for (std::size_t i = from; i < segs.size(); ++i) {
    if (segs[i].length() > budget) continue;
    cur.push_back(segs[i]);
    enumerate_rec(segs, i, budget - segs[i].length(), cur, out);
    cur.pop_back();
  }
}

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// 1. Closed double sum against the literal composition.
Check crit_closed_form() {
  Check c;
  Context ctx("sigma", {Line{"rho", true, H(1)}});
  std::size_t count = 0;
  for (std::int64_t b2 = -6; b2 <= 6; ++b2) {
    for (std::int64_t len = 1; len <= 6; ++len) {
      std::int64_t e2 = b2 + 2 * (len - 1);
      if (e2 > 6) break;
      Segment s = Segment::make("rho", H(b2), H(e2));
      TensorGL lit = Mstar(ctx, GLElt::key(Basis::Delta, Multisegment{s}));
      c.require(Mstar_segment_closed(ctx, s).value == lit, "closed form differs on " + s.str());
      ++count;
    }
  }
  if (c.ok) c.detail = std::to_string(count) + " segments";
  return c;
}

// 2. Coassociativity of m* in both bases.
Check crit_coassociativity() {
  Check c;
  auto all = all_multisegments("rho", H(-3), H(3), 5);
  for (Basis b : {Basis::Delta, Basis::Zeta})
    for (const auto& m : all) {
      GLElt x = GLElt::key(b, m);
      c.require(mstar_left_iterate(x) == mstar_right_iterate(x),
                "coassociativity fails on " + m.str() + " in the " + std::string(to_string(b)) +
                    " basis");
    }
  if (c.ok) c.detail = std::to_string(all.size()) + " multisegments x 2 bases";
  return c;
}

// 3. delta(D_u) (x) 1 occurs twice in M*(delta(D_u)).
Check crit_double_top() {
  Check c;
  for (std::int64_t a2 = 1; a2 <= 6; ++a2) {
    Context ctx("sigma", {Line{"rho", true, H(a2)}});
    Segment du = Segment::make("rho", H(-a2), H(a2));
    TensorGL t = Mstar(ctx, GLElt::key(Basis::Delta, Multisegment{du}));
    Coeff k = t.sum.coeff(MsPair{Multisegment{du}, Multisegment{}});
    c.require(k == 2, "coefficient " + std::to_string(k) + " for alpha = " + H(a2).str());
  }
  if (c.ok) c.detail = "alpha = 1/2 .. 3";
  return c;
}

// 4. nu^a rho x| sigma = St + CoSt at the level of mu*.
Check crit_reducible_point() {
  Check c;
  for (std::int64_t a2 = 1; a2 <= 3; ++a2) {
    HalfInt a = H(a2);
    Context ctx("sigma", {Line{"rho", true, a}});
    ClassElt induced =
        class_key(InducedSymbol{Multisegment{Segment::singleton("rho", a)}, Cusp{"sigma"}});
    TensorClass lhs = split_reducible_point(ctx, mustar(ctx, induced));
    TensorClass rhs = mustar_base(StGen{"sigma", "rho", a, 0}) +
                      mustar_base(CoStGen{"sigma", "rho", a, 0});
    c.require(lhs == rhs, "identity fails at alpha = " + a.str());
  }
  if (c.ok) c.detail = "alpha = 1/2, 1, 3/2";
  return c;
}

// 5. Instance sweep for the length and multiplicity bounds.
Check crit_prop41() {
  Check c;
  auto entries = check_prop41({H(1), H(2), H(3)}, 1, 3);
  std::size_t eligible = 0;
  for (const auto& e : entries) {
    if (!e.eligible()) continue;
    ++eligible;
    std::string who = "datum " + to_langlands(e.datum, "sigma").ms.str() +
                      (e.datum.bottom ? " bottom " + e.datum.bottom->str() : std::string()) +
                      " alpha " + e.datum.alpha.str();
    c.require(e.length->certificates.size() >= 5 && e.length->certificates_distinct(),
              who + ": fewer than 5 distinct certificates");
    for (const char* id : {"F1", "F2", "F3"}) {
      bool found = false;
      for (const auto& s : e.length->steps)
        if (s.id == id) {
          found = true;
          c.require(s.status == StepStatus::Verified, who + ": step " + id + " not verified");
        }
      c.require(found, who + ": step " + id + " missing");
    }
    c.require(e.mult->multiplicity_bound && *e.mult->multiplicity_bound <= 4 &&
                  5 > *e.mult->multiplicity_bound,
              who + ": multiplicity bound exceeds 4");
    c.require(e.pass(), who + ": report does not pass");
  }
  if (c.ok) c.detail = std::to_string(eligible) + " eligible data";
  return c;
}

// 6. Enumeration count and the Aubert pairing.
Check crit_enumeration() {
  Check c;
  for (std::int64_t a2 : {1, 2, 3}) {
    Context ctx = family_context("rho", H(a2));
    for (std::int64_t n = 0; n <= 8; ++n) {
      auto data = enumerate_subquotients(ctx, "rho", H(a2), n);
      std::set<SubqDatum> set(data.begin(), data.end());
      c.require(data.size() == (std::size_t{1} << (n + 1)) && set.size() == data.size(),
                "count " + std::to_string(data.size()) + " for n = " + std::to_string(n));
      std::size_t with_bottom = 0;
      for (const auto& d : data) {
        SubqDatum p = aubert_pair(d);
        c.require(set.count(p) == 1, "pair outside the enumeration");
        c.require(aubert_pair(p) == d, "pairing is not an involution");
        c.require(p.bottom.has_value() != d.bottom.has_value(), "pairing keeps the half");
        if (d.bottom) ++with_bottom;
      }
      c.require(with_bottom == (std::size_t{1} << n), "halves have unequal size");
    }
  }
  if (c.ok) c.detail = "n = 0 .. 8, alpha = 1/2, 1, 3/2";
  return c;
}

// 7. Zelevinsky involution.
Check crit_mw() {
  Check c;
  std::mt19937 rng(20240607);
  for (int i = 0; i < 1000; ++i) {
    Multisegment m = random_multisegment(rng, "rho", 8);
    Multisegment t = mw_dual(m);
    c.require(mw_dual(t) == m, "not an involution on " + m.str());
    c.require(support(t) == support(m), "support changes on " + m.str());
  }
  for (std::int64_t b2 = -4; b2 <= 4; ++b2)
    for (std::int64_t len = 1; len <= 5; ++len) {
      Segment s = Segment::make("rho", H(b2), H(b2 + 2 * (len - 1)));
      std::vector<Segment> singles;
      for (std::int64_t j = 0; j < len; ++j) singles.push_back(Segment::singleton("rho", s.b + j));
      c.require(mw_dual(Multisegment{s}) == Multisegment(singles),
                "segment " + s.str() + " does not dualize to singletons");
    }
  if (c.ok) c.detail = "1000 random multisegments, seed 20240607";
  return c;
}

// 8. Highest derivatives.
Check crit_hd() {
  Check c;
  auto all = all_multisegments("rho", H(-3), H(3), 5);
  for (const auto& m : all) {
    if (m.empty()) continue;
    c.require(highest_derivative(GLElt::key(Basis::Zeta, m)) ==
                  GLElt::key(Basis::Zeta, ms_minus(m)),
              "h.d. rule fails on " + m.str());
  }
  std::size_t caseb = 0;
  for (std::int64_t a2 : {1, 2, 3}) {
    Context ctx = family_context("rho", H(a2));
    for (std::int64_t n = 0; n <= 3; ++n)
      for (const auto& d : enumerate_subquotients(ctx, "rho", H(a2), n)) {
        if (classify(d) != CaseTag::CaseB) continue;
        ++caseb;
        c.require(verify_hd_identity(d), "h.d. identity fails on a CaseB datum");
      }
  }
  if (c.ok)
    c.detail = std::to_string(all.size() - 1) + " keys, " + std::to_string(caseb) + " CaseB data";
  return c;
}

// 9. Jantzen correspondence.
Check crit_jantzen() {
  Check c;
  Context ctx("sigma", {Line{"rho1", true, H(1)}, Line{"rho2", true, H(2)},
                        Line{"rho3", true, H(1)}});
  std::mt19937 rng(8701);
  LinePartition p12 = LinePartition::make(ctx, {"rho1"}, {"rho2", "rho3"});
  for (int i = 0; i < 100; ++i) {
    LanglandsDatum x1 = random_datum(rng, ctx, "rho1");
    LanglandsDatum x2 = random_datum(rng, ctx, "rho2");
    LanglandsDatum d = psi_combine(x1, x2);
    c.require(xi_project(d, p12, 1) == x1 && xi_project(d, p12, 2) == x2, "xi o psi != id");
    c.require(psi_combine(xi_project(d, p12, 1), xi_project(d, p12, 2)) == d, "psi o xi != id");
    c.require(d.degree() == x1.degree() + x2.degree(), "grading is not additive");
    c.require(psi_combine(classical_contragredient(x1), classical_contragredient(x2)) ==
                  classical_contragredient(d),
              "psi does not commute with the contragredient");
  }
  for (int i = 0; i < 50; ++i) {
    LanglandsDatum a = random_datum(rng, ctx, "rho1");
    LanglandsDatum b = random_datum(rng, ctx, "rho2");
    LanglandsDatum e = random_datum(rng, ctx, "rho3");
    LanglandsDatum left = psi_combine(psi_combine(a, b), e);
    LanglandsDatum right = psi_combine(a, psi_combine(b, e));
    c.require(left == right, "three-part associativity fails");
    c.require(xi_project(xi_project(left, {"rho1", "rho2"}), {"rho1"}) ==
                  xi_project(xi_project(left, {"rho1", "rho3"}), {"rho1"}),
              "iterated projections disagree");
  }
  // mu*_{X1}(beta x| gamma) = M*_GL(beta) (x) gamma.
  std::vector<InducedSymbol> gammas = {
      InducedSymbol{Multisegment{}, Cusp{"sigma"}},
      InducedSymbol{Multisegment{Segment::singleton("rho2", H(1))}, Cusp{"sigma"}},
      InducedSymbol{Multisegment{}, StGen{"sigma", "rho2", H(2), 1}},
  };
  LinePartition p = LinePartition::make(ctx, {"rho1"}, {"rho2", "rho3"});
  std::size_t betas = 0;
  for (const auto& beta : all_multisegments("rho1", H(-2), H(2), 4)) {
    ++betas;
    GLElt mgl = MstarGL(ctx, GLElt::key(Basis::Delta, beta));
    for (const auto& g : gammas) {
      TensorClass expect;
      for (const auto& [m, k] : mgl.sum) expect.add(ClassPair{GLMonomial::of_delta(m), g}, k);
      TensorClass got =
          mustar_filtered(ctx, class_key(InducedSymbol{beta + g.gl, g.base}), p, 1);
      c.require(got == expect, "filtered mu* differs for beta = " + beta.str());
    }
  }
  if (c.ok) c.detail = "100 two-line, 50 three-line data, " + std::to_string(betas) + " beta";
  return c;
}

// 10. Generic criterion truth table and transport invariance.
Check crit_generic() {
  Check c;
  auto R = [](std::int64_t n, std::int64_t d) { return Rational(n, d); };
  auto sd = [](std::vector<Rational> ex, bool halfred = false, bool tau = false) {
    return GenericDatum{GenericEntry{"d", std::nullopt, true, std::move(ex), halfred, tau}};
  };
  struct Row {
    GenericDatum datum;
    bool expect;
    std::string failed;
  };
  std::vector<Row> table = {
      {{}, true, ""},
      {{GenericEntry{"d", "d~", false, {R(1, 4)}, false, false}}, false, "1"},
      {sd({R(3, 4)}, true), false, "2"},
      {sd({R(1, 4), R(3, 5)}), true, ""},
      {sd({R(2, 5), R(3, 5)}), false, "3a"},
      {sd({R(1, 2), R(1, 2)}), false, "3a"},
      {sd({R(1, 2), R(3, 5)}), false, "3b"},
      {sd({R(3, 5), R(4, 5)}), false, "3c"},
      {sd({R(1, 4)}, false, true), false, "3d"},
      {sd({R(3, 10), R(3, 5), R(4, 5)}), true, ""},
  };
  for (std::size_t i = 0; i < table.size(); ++i) {
    GenericVerdict v = generic_unitarizable(table[i].datum);
    c.require(v.unitarizable == table[i].expect && v.failed == table[i].failed,
              "row " + std::to_string(i + 1) + " gives '" + v.failed + "'");
  }

  Context ctx("sigma", {Line{"rho1", true, H(1)}, Line{"rho2", true, H(1)},
                        Line{"pi1", true, H(2)}, Line{"pi2", true, H(2)}});
  std::mt19937 rng(1211);
  for (const auto& [from, to] : {std::pair<LineId, LineId>{"rho1", "rho2"}, {"pi1", "pi2"}}) {
    HalfInt alpha = *ctx.line(from).alpha;
    for (int i = 0; i < 40; ++i) {
      GenericDescription d;
      int nf = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int j = 0; j < nf; ++j) {
        std::int64_t x2 = alpha.doubled() + 2 * std::uniform_int_distribution<int>(-1, 1)(rng);
        if (x2 < 0) x2 = alpha.doubled();
        Segment base = Segment::make(from, H(-x2), H(x2));
        d.factors.push_back({base, R(std::uniform_int_distribution<int>(1, 9)(rng), 10)});
      }
      LineTempered t;
      if (rng() % 2) t.jord.push_back(Segment::make(from, -alpha, alpha));
      if (rng() % 2) t.gammas.push_back(Segment::make(from, -(alpha + 1), alpha + 1));
      d.tempered[from] = t;
      GenericVerdict before = decide_generic(ctx, d);
      GenericVerdict after = decide_generic(ctx, transport_generic(ctx, d, from, to));
      c.require(before.unitarizable == after.unitarizable && before.failed == after.failed,
                "transport changes the verdict");
      c.require(decide_generic_by_line(ctx, d).unitarizable == before.unitarizable,
                "factor-then-decide differs");
    }
  }
  if (c.ok) c.detail = "10 table rows, 80 transported descriptions";
  return c;
}

struct CriterionDef {
  const char* name;
  double limit;
  Check (*run)();
};

const CriterionDef kCriterionDefs[kCriteria] = {
    {"closed M* equals the composition", 5, crit_closed_form},
    {"coassociativity of m*", 10, crit_coassociativity},
    {"delta(D_u) (x) 1 has multiplicity 2", 1, crit_double_top},
    {"nu^a rho x| sigma splits at the reducibility point", 1, crit_reducible_point},
    {"length >= 5 and multiplicity <= 4 sweep", 60, crit_prop41},
    {"enumeration count and Aubert pairing", 5, crit_enumeration},
    {"MW involution", 5, crit_mw},
    {"highest derivative rule", 5, crit_hd},
    {"Jantzen round trips", 10, crit_jantzen},
    {"generic criterion and transport", 1, crit_generic},
};

}  // namespace

std::vector<Multisegment> all_multisegments(const LineId& line, HalfInt lo, HalfInt hi,
                                            std::int64_t max_degree) {
  std::vector<Segment> segs;
  for (std::int64_t b2 = lo.doubled(); b2 <= hi.doubled(); ++b2)
    for (std::int64_t e2 = b2; e2 <= hi.doubled(); e2 += 2) segs.push_back(Segment::make(line, H(b2), H(e2)));
  std::vector<Multisegment> out;
  std::vector<Segment> cur;
  enumerate_rec(segs, 0, max_degree, cur, out);
  return out;
}

Multisegment random_multisegment(std::mt19937& rng, const LineId& line, int max_segments) {
  int count = std::uniform_int_distribution<int>(1, max_segments)(rng);
  std::vector<Segment> segs;
  for (int i = 0; i < count; ++i) {
    std::int64_t b2 = std::uniform_int_distribution<int>(-6, 6)(rng);
    std::int64_t len = std::uniform_int_distribution<int>(1, 4)(rng);
    segs.push_back(Segment::make(line, H(b2), H(b2 + 2 * (len - 1))));
  }
  return Multisegment(std::move(segs));
}

LanglandsDatum random_datum(std::mt19937& rng, const Context& ctx, const LineId& line) {
  const HalfInt a = *ctx.line(line).alpha;
  const std::string& sigma = ctx.sigma();
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<Segment> segs;
  int count = uni(0, 3);
  while (static_cast<int>(segs.size()) < count) {
    std::int64_t b2 = uni(-4, 6);
    std::int64_t len = uni(1, 3);
    Segment s = Segment::make(line, H(b2), H(b2 + 2 * (len - 1)));
    if (s.center() > HalfInt{}) segs.push_back(s);
  }
  TemperedSymbol t = TemperedSymbol::cusp(sigma);
  switch (uni(0, 4)) {
    case 0: break;
    case 1: t = TemperedSymbol::of_base(StGen{sigma, line, a, uni(0, 2)}); break;
    case 2: {
      HalfInt x = a + uni(0, 1);
      t = TemperedSymbol::tau(Segment::make(line, -x, x), uni(0, 1) ? 1 : -1, sigma);
      break;
    }
    case 3: {
      HalfInt x = a + uni(0, 1);
      t = TemperedSymbol::delta_pm(Segment::make(line, -x, x + uni(1, 2)), uni(0, 1) ? 1 : -1,
                                   sigma);
      break;
    }
    default: {
      HalfInt y = a + uni(1, 2);
      t = TemperedSymbol::ind({Segment::make(line, -y, y)},
                              TemperedSymbol::of_base(StGen{sigma, line, a, 0}));
      break;
    }
  }
  return LanglandsDatum::make(Multisegment(std::move(segs)), std::move(t));
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriteria) throw Error(ErrorCode::InvalidArgument, "no such criterion");
  const CriterionDef& s = kCriterionDefs[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = s.name;
  r.limit = s.limit;
  auto start = std::chrono::steady_clock::now();
  try {
    Check c = s.run();
    r.ok = c.ok;
    r.detail = c.detail;
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace cuspline
