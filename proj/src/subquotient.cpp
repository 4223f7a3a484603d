#include "cuspline/subquotient.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace cuspline {

std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::GenSteinberg: return "GenSteinberg";
    case CaseTag::CoGenSteinberg: return "CoGenSteinberg";
    case CaseTag::CaseA: return "CaseA";
    case CaseTag::CaseB: return "CaseB";
    case CaseTag::CaseC: return "CaseC";
  }
  return "?";
}

std::string_view to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Verified: return "VERIFIED";
    case StepStatus::Axiom: return "AXIOM";
    case StepStatus::Failed: return "FAILED";
  }
  return "?";
}

bool CertReport::certificates_distinct() const {
  std::set<Certificate> seen(certificates.begin(), certificates.end());
  return seen.size() == certificates.size();
}

bool CertReport::pass() const {
  for (const auto& s : steps) {
    if (s.status == StepStatus::Failed) return false;
    if (s.status == StepStatus::Axiom && s.citation.empty()) return false;
  }
  if (multiplicity_bound) return *multiplicity_bound <= 4;
  return certificates.size() >= 5 && certificates_distinct();
}

bool Prop41Entry::pass() const {
  if (!eligible()) return true;
  return length->pass() && mult->pass() && mult->multiplicity_bound &&
         5 > *mult->multiplicity_bound;
}

// ---------------------------------------------------------------------------

std::vector<SubqDatum> enumerate_subquotients(const Context& ctx, const LineId& line,
                                              HalfInt alpha, std::int64_t n) {
  if (!(alpha > HalfInt{}))
    throw Error(ErrorCode::InvalidArgument, "the family needs alpha > 0");
  if (n < 0 || n > 30) throw Error(ErrorCode::InvalidArgument, "n must lie in [0, 30]");
  const Line& l = ctx.line(line);
  if (!l.alpha || *l.alpha != alpha)
    throw Error(ErrorCode::ReducibilityMismatch,
                "line '" + line + "' does not reduce at " + alpha.str());

  std::vector<SubqDatum> out;
  // Bit i-1 of mask set: a cut between alpha+i-1 and alpha+i.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Segment> bottom_up;
    HalfInt start = alpha;
    for (std::int64_t i = 1; i <= n; ++i) {
      if (mask & (std::uint64_t{1} << (i - 1))) {
        bottom_up.push_back(Segment::make(line, start, alpha + (i - 1)));
        start = alpha + i;
      }
    }
    bottom_up.push_back(Segment::make(line, start, alpha + n));
    std::vector<Segment> top_first(bottom_up.rbegin(), bottom_up.rend());

    out.push_back(SubqDatum{line, alpha, n, top_first, std::nullopt});
    std::vector<Segment> rest(top_first.begin(), top_first.end() - 1);
    out.push_back(SubqDatum{line, alpha, n, rest, top_first.back()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

CaseTag classify(const SubqDatum& d) {
  validate(d);
  if (d.blocks.empty()) return CaseTag::GenSteinberg;
  if (d.bottom) return CaseTag::CaseC;
  if (d.blocks.back().length() > 1) return CaseTag::CaseA;
  bool all_single = std::all_of(d.blocks.begin(), d.blocks.end(),
                                [](const Segment& s) { return s.length() == 1; });
  return all_single ? CaseTag::CoGenSteinberg : CaseTag::CaseB;
}

namespace {

// Shape of a bottom-empty datum in CaseA or CaseB.
struct Shape {
  CaseTag tag;
  std::vector<Segment> a;  // blocks above the long block, top first
  Segment dk;              // the long block [alpha', c]
  std::vector<Segment> b;  // trailing singletons [alpha'-1], ..., [alpha]
  HalfInt alpha_p;
  HalfInt c;
  Segment du;   // [-alpha', alpha']
  Segment big;  // [-alpha', c]
};

Shape shape_of(const SubqDatum& d) {
  CaseTag tag = classify(d);
  if (tag != CaseTag::CaseA && tag != CaseTag::CaseB)
    throw Error(ErrorCode::WrongCase, "expected a CaseA or CaseB datum");
  std::size_t k0 = d.blocks.size() - 1;
  while (d.blocks[k0].length() == 1) --k0;
  Shape s{tag, {}, d.blocks[k0], {}, d.blocks[k0].b, d.blocks[k0].e, d.blocks[k0], d.blocks[k0]};
  s.a.assign(d.blocks.begin(), d.blocks.begin() + static_cast<std::ptrdiff_t>(k0));
  s.b.assign(d.blocks.begin() + static_cast<std::ptrdiff_t>(k0) + 1, d.blocks.end());
  s.du = Segment::make(d.line, -s.alpha_p, s.alpha_p);
  s.big = Segment::make(d.line, -s.alpha_p, s.c);
  return s;
}

Multisegment ms_of(const std::vector<Segment>& v) { return Multisegment(v); }

Support abs_support(const Support& s) {
  Support r;
  for (const auto& p : s) r.push_back(Point{p.line, p.x < HalfInt{} ? -p.x : p.x});
  std::sort(r.begin(), r.end());
  return r;
}

Point pt(const LineId& line, HalfInt x) { return Point{line, x}; }

bool any_contains(const Support& s, const LineId& line, std::initializer_list<HalfInt> xs) {
  for (HalfInt x : xs)
    if (support_contains(s, pt(line, x))) return true;
  return false;
}

Step verified(std::string id, std::string claim, bool ok) {
  return Step{std::move(id), std::move(claim), ok ? StepStatus::Verified : StepStatus::Failed, {}};
}

Step axiom(std::string id, std::string claim, std::string citation) {
  return Step{std::move(id), std::move(claim), StepStatus::Axiom, std::move(citation)};
}

GLElt delta_of(const Segment& s) { return GLElt::key(Basis::Delta, Multisegment{s}); }

// Terms of M*_GL(delta(seg)) as supports.
std::vector<Support> mstar_gl_supports(const Context& ctx, const Segment& seg) {
  std::vector<Support> out;
  for (const auto& [m, c] : MstarGL(ctx, delta_of(seg)).sum) out.push_back(support(m));
  return out;
}

std::vector<Multisegment> mstar_gl_keys(const Context& ctx, const Segment& seg) {
  std::vector<Multisegment> out;
  for (const auto& [m, c] : MstarGL(ctx, delta_of(seg)).sum) out.push_back(m);
  return out;
}

TemperedSymbol steinberg(const Context& ctx, const LineId& line, const std::optional<Segment>& s) {
  if (!s) return TemperedSymbol::cusp(ctx.sigma());
  return TemperedSymbol::of_base(StGen{ctx.sigma(), line, s->b, s->length() - 1});
}

// F2: the exponent c is present without c+1 in the Langlands datum of C3.
Step f2_step(const Context& ctx, const Shape& s, const LineId& line) {
  const HalfInt c = s.c;
  if (s.a.empty())
    return verified("F2", "no block above the long block: nothing can supply c+1 = " +
                              (c + 1).str() + ", exclusion is vacuous",
                    true);
  const Segment& above = s.a.back();
  const HalfInt dd = above.e;
  bool ok = above.b == c + 1;
  // Every term of M*_GL(delta([alpha', d])) containing c also contains c+1.
  for (const auto& sup : mstar_gl_supports(ctx, Segment::make(line, s.alpha_p, dd)))
    if (support_contains(sup, pt(line, c)) && !support_contains(sup, pt(line, c + 1))) ok = false;
  // Neither c nor c+1 occurs in M*_GL(delta(D_u)).
  for (const auto& sup : mstar_gl_supports(ctx, s.du))
    if (any_contains(sup, line, {c, c + 1, -c, -(c + 1)})) ok = false;
  // The remaining blocks stay away from +-c, +-(c+1).
  std::vector<Segment> a1(s.a.begin(), s.a.end() - 1);
  Support rest = support_union(support(ms_of(a1)), support(ms_of(s.b)));
  if (any_contains(rest, line, {c, c + 1, -c, -(c + 1)})) ok = false;
  return verified("F2",
                  "every term of M*_GL(delta([" + s.alpha_p.str() + "," + dd.str() +
                      "])) containing " + c.str() + " also contains " + (c + 1).str() +
                      "; no other factor supplies +-" + c.str() + " or +-" + (c + 1).str(),
                  ok);
}

// F3: the exponent -alpha can occur at most once on the witness side.
Step f3_step(const Context& ctx, const SubqDatum& d, const Shape& s, const LineId& line) {
  const HalfInt alpha = d.alpha;
  const Point minus_alpha = pt(line, -alpha);
  bool ok = true;
  // Twice in the Langlands datum of C3 (contragredient form).
  Multisegment c3dual = ms_contragredient(ctx, ms_of(s.a)) +
                        Multisegment{Segment::singleton(line, -s.alpha_p)} +
                        ms_contragredient(ctx, ms_of(s.b)) + Multisegment{s.big};
  if (support_count(support(c3dual), minus_alpha) != 2) ok = false;
  // Absent from the other factors.
  std::vector<Segment> others = s.a;
  if (s.tag == CaseTag::CaseB) {
    others.push_back(s.dk);
    for (const auto& x : s.b)
      if (x.b != alpha) others.push_back(x);
  }
  Support sup_others = support(ms_of(others));
  if (support_contains(sup_others, minus_alpha) || support_contains(sup_others, pt(line, alpha)))
    ok = false;
  // Left factors of mu* of the tempered part avoid -alpha.
  BaseSymbol base = s.tag == CaseTag::CaseA
                        ? BaseSymbol{StGen{ctx.sigma(), line, alpha, (s.c - alpha).doubled() / 2}}
                        : BaseSymbol{StGen{ctx.sigma(), line, alpha, 0}};
  for (const auto& [pair, c] : mustar_base(base))
    if (support_contains(pair.first.support(), minus_alpha)) ok = false;
  // Each term of M*_GL(delta(D_u)) carries -alpha at most once.
  for (const auto& sup : mstar_gl_supports(ctx, s.du))
    if (support_count(sup, minus_alpha) > 1) ok = false;
  return verified("F3",
                  "-" + alpha.str() + " occurs twice in the datum of C3 but at most once in " +
                      "every term of M*_GL(delta(" + s.du.str() + ")) and never elsewhere",
                  ok);
}

// Certificates and steps for a bottom-empty datum.
CertReport length_report(const Context& ctx, const SubqDatum& d) {
  Shape s = shape_of(d);
  const LineId& line = d.line;
  const std::string& sigma = ctx.sigma();
  const Segment single_ap = Segment::singleton(line, s.alpha_p);

  CertReport r;
  r.datum = d;
  r.tag = s.tag;
  r.witness = witness_tau(ctx, d);

  Multisegment upper = ms_of(s.a) + Multisegment{s.dk} + ms_of(s.b);
  Multisegment c3 = ms_of(s.a) + Multisegment{s.big} + ms_of(s.b) + Multisegment{single_ap};
  Multisegment c45 = ms_of(s.a) + Multisegment{single_ap} + ms_of(s.b);
  for (int sign : {+1, -1})
    r.certificates.push_back(
        {LanglandsDatum::make(upper, TemperedSymbol::tau(s.du, sign, sigma)), false});
  r.certificates.push_back({LanglandsDatum::make(c3, TemperedSymbol::cusp(sigma)), false});
  for (int sign : {+1, -1})
    r.certificates.push_back(
        {LanglandsDatum::make(c45, TemperedSymbol::delta_pm(s.big, sign, sigma)), false});

  const std::int64_t total = s.du.length() + d.n + 1;
  const LanglandsDatum gamma = to_langlands(d, sigma);

  r.steps.push_back(axiom("tau-pm",
                          "delta(" + s.du.str() + ") x| sigma = tau_+ + tau_-, and both L(a, D_k, b; "
                          "tau_+-) occur in delta(D_u) x| gamma by Frobenius reciprocity",
                          "T-irr Thm 13.2"));

  if (s.tag == CaseTag::CaseB) {
    r.steps.push_back(verified("hd-identity",
                               "h.d. of Z(D_u, a, D_k0, b) contains Z(a^-, D^-) and matches the "
                               "support of L(a, D, b, [" + s.alpha_p.str() + "])",
                               verify_hd_identity(d)));
    r.steps.push_back(axiom("hd-determines",
                            "an irreducible representation is determined by its support and "
                            "highest derivative",
                            "Z, derivatives"));
  }
  r.steps.push_back(axiom("c3-occurs",
                          "L(a, D, b, [" + s.alpha_p.str() + "]; sigma) is a subquotient of "
                          "delta(D_u) x| gamma",
                          "T-CJM Prop 5.3"));

  // Composition series isolating gamma, with the other constituent.
  std::vector<Segment> exp_a;
  Segment exp_dk = s.dk;
  if (s.tag == CaseTag::CaseA) {
    exp_a = s.a;
  } else {
    exp_a = s.a;
    exp_a.push_back(s.dk);
    exp_a.insert(exp_a.end(), s.b.begin(), s.b.end() - 1);
    exp_dk = s.b.back();
  }
  FormalSum<LanglandsDatum> expansion = comp_series_expand(ctx, exp_a, exp_dk, {}, std::nullopt);
  LanglandsDatum other =
      LanglandsDatum::make(ms_of(exp_a), steinberg(ctx, line, exp_dk));
  bool expansion_ok = expansion.size() == 2 && expansion.coeff(gamma) == 1 &&
                      expansion.coeff(other) == 1;
  r.steps.push_back(verified("composition-series",
                             "L(a', " + exp_dk.str() + ") x| sigma = gamma + L(a'; delta(" +
                                 exp_dk.str() + "; sigma))",
                             expansion_ok));
  r.steps.push_back(axiom("composition-series-source",
                          "two-term composition series of L(a', D) x| sigma", "HTd Lemma 3.1"));

  // F1: C3 is not a subquotient of delta(D_u) x| (other constituent).
  Exponents e3 = estar(r.certificates[2].datum, total);
  Exponents eo = estar(other, total);
  r.steps.push_back(verified("F1",
                             "e_*(C3) is not <= e_*(standard module of delta(D_u) x| L(a'; "
                             "delta(" + exp_dk.str() + "; sigma))), since alpha > 0",
                             !leq_estar(e3, eo)));
  r.steps.push_back(axiom("F1-source",
                          "Langlands quotients of a standard module satisfy e_* <= e_* of it",
                          "Borel-Wallach, BPLC"));

  if (!s.a.empty()) {
    const Segment& above = s.a.back();
    r.steps.push_back(axiom("gl-decomposition",
                            "L(a, D_k) x-type decomposition: only L(a1, " + above.str() +
                                " u D_k) can add the exponent " + (s.c + 1).str(),
                            "Z, products of two segments"));
  }
  r.steps.push_back(f2_step(ctx, s, line));

  if (s.tag == CaseTag::CaseB) {
    bool ok = true;
    Multisegment dual = mw_dual(Multisegment{Segment::make(line, -s.alpha_p, -d.alpha)});
    bool has_single = false;
    for (const auto& x : dual)
      if (x == Segment::singleton(line, -s.alpha_p)) has_single = true;
    ok = ok && has_single;
    auto ends_at = [&](const Multisegment& m) {
      for (const auto& x : m)
        if (x.e == -s.alpha_p) return true;
      return false;
    };
    for (const auto& m : mstar_gl_keys(ctx, Segment::make(line, s.alpha_p - 1, s.c)))
      if (ends_at(m)) ok = false;
    for (const auto& m : mstar_gl_keys(ctx, s.du))
      if (ends_at(m)) ok = false;
    if (auto lowrun = make_segment_or_empty(line, d.alpha, s.alpha_p - 2))
      if (lowrun->contains(s.alpha_p) || lowrun->contains(-s.alpha_p)) ok = false;
    r.steps.push_back(verified("F2b",
                               "the segment ending at -" + s.alpha_p.str() +
                                   " required by the dual side is produced by no factor",
                               ok));
  }

  r.steps.push_back(f3_step(ctx, d, s, line));
  r.steps.push_back(axiom("delta-pm",
                          "delta(D_+-; sigma) exist and L(a, [" + s.alpha_p.str() +
                              "], b; delta(D_+-; sigma)) occur in delta(D_u) x| gamma",
                          "T-seg, HTd Lemma 4.2"));
  r.steps.push_back(verified("distinct", "the five certificates are pairwise distinct",
                             r.certificates.size() == 5 && r.certificates_distinct()));
  return r;
}

// Multiplicity of delta(D_u) (x) gamma in mu*(delta(D_u) x| gamma).
CertReport mult_report(const Context& ctx, const SubqDatum& d) {
  Shape s = shape_of(d);
  const LineId& line = d.line;
  const std::string& sigma = ctx.sigma();

  CertReport r;
  r.datum = d;
  r.tag = s.tag;
  r.witness = witness_tau(ctx, d);

  TensorGL ms = Mstar(ctx, delta_of(s.du));
  const MsPair top{Multisegment{s.du}, Multisegment{}};
  const Coeff direct = ms.sum.coeff(top);
  r.steps.push_back(verified("mult-direct",
                             "delta(D_u) (x) 1 has coefficient 2 in M*(delta(D_u))", direct == 2));
  r.breakdown.emplace_back("delta(" + s.du.str() + ") (x) 1", direct);

  // Left factors of mu*(gamma) supported inside supp(D_u).
  const Support sdu = support(Multisegment{s.du});
  auto inside = [&](const Support& x) {
    return support_difference(sdu, x).has_value();
  };
  std::set<Support> allowed;
  if (s.tag == CaseTag::CaseA) {
    ClassElt standard = class_key(InducedSymbol{ms_of(s.a) + Multisegment{s.dk}, Cusp{sigma}});
    for (const auto& [pair, c] : mustar(ctx, standard))
      if (!pair.first.empty() && pair.first.generic() && inside(pair.first.support()))
        allowed.insert(pair.first.support());
    r.steps.push_back(axiom("mult-standard", "gamma <= delta(a) x delta(D_k) x| sigma",
                            "Langlands classification"));
  } else {
    Segment upper_rest = Segment::make(line, s.alpha_p + 1, s.c);
    ClassElt gl_part = class_key(InducedSymbol{ms_of(s.a) + Multisegment{upper_rest}, Cusp{sigma}});
    TensorClass left_gl = mustar(ctx, gl_part);
    BaseSymbol cost = CoStGen{sigma, line, d.alpha, (s.alpha_p - d.alpha).doubled() / 2};
    TensorClass left_cost = mustar_base(cost);
    bool first_trivial = true;
    for (const auto& [p1, c1] : left_gl) {
      for (const auto& [p2, c2] : left_cost) {
        GLMonomial z = p1.first * p2.first;
        if (z.empty() || !z.generic() || !inside(z.support())) continue;
        if (!p1.first.empty()) first_trivial = false;
        allowed.insert(z.support());
      }
    }
    r.steps.push_back(axiom("mult-standard",
                            "gamma <= L(a, " + upper_rest.str() + ") x| L([" + d.alpha.str() + "," +
                                s.alpha_p.str() + "]^t; sigma)",
                            "HTd Lemma 3.1, T-CJM Prop 4.2"));
    r.steps.push_back(verified("mult-support",
                               "support forces the trivial left factor from L(a, " +
                                   upper_rest.str() + ")",
                               first_trivial));
  }
  std::string zs;
  for (const auto& z : allowed) {
    if (!zs.empty()) zs += ", ";
    zs += "{";
    for (std::size_t i = 0; i < z.size(); ++i) zs += (i ? "," : "") + z[i].x.str();
    zs += "}";
  }
  r.steps.push_back(verified("mult-left",
                             "nonempty generic left factors of mu*(gamma) inside supp(D_u): " +
                                 (zs.empty() ? std::string("none") : zs),
                             true));

  const Support sgamma = support(ms_of(d.blocks));
  Coeff extra = 0;
  bool regular_ok = true;
  for (const auto& [pair, c] : ms.sum) {
    if (pair == top) continue;
    auto rest = support_difference(sdu, support(pair.first));
    if (!rest || rest->empty() || !allowed.count(*rest)) continue;
    auto w = support_difference(sgamma, abs_support(*rest));
    bool regular =
        w && multiplicity_free(support_union(abs_support(support(pair.second)), *w));
    regular_ok = regular_ok && regular;
    extra += c;
    r.breakdown.emplace_back("delta(" + pair.first.str() + ") (x) " + pair.second.str(), c);
  }
  r.steps.push_back(verified("mult-regular",
                             "each remaining contribution has a regular right factor, so it "
                             "counts at most once",
                             regular_ok));
  r.multiplicity_bound = direct + extra;
  r.steps.push_back(verified("mult-bound",
                             "bound " + std::to_string(direct + extra) + " <= 4 < 5",
                             direct + extra <= 4));
  return r;
}

CertReport dualize(const Context& ctx, CertReport p, const SubqDatum& d) {
  const SubqDatum paired = p.datum;
  p.datum = d;
  p.tag = CaseTag::CaseC;
  for (auto& c : p.certificates) c.aubert_dual = true;
  Segment du = p.witness.langlands.entries().front();
  p.witness = Witness{GLElt::key(Basis::Zeta, Multisegment{du}), mw_dual(Multisegment{du}),
                      "s(" + du.str() + ") = delta(" + du.str() + ")^t"};
  (void)ctx;
  std::string pstr;
  for (const auto& b : paired.blocks) pstr += b.str() + " ";
  p.steps.insert(p.steps.begin(),
                 verified("aubert-pair",
                          "the datum is the Aubert dual of the bottom-empty datum " + pstr +
                              "(" + std::string(to_string(classify(paired))) + ")",
                          aubert_pair(paired) == d && aubert_pair(d) == paired));
  p.steps.push_back(axiom("aubert-irreducible",
                          "the Aubert involution sends irreducibles to irreducibles",
                          "Aubert-Schneider-Stuhler, irreducibility of duals"));
  p.steps.push_back(axiom("aubert-transfer",
                          "lengths and Jacquet multiplicities transfer through the involution",
                          "Aubert-Schneider-Stuhler, Jacquet modules of duals"));
  return p;
}

}  // namespace

Witness witness_tau(const Context& ctx, const SubqDatum& d) {
  CaseTag tag = classify(d);
  if (tag == CaseTag::CaseC) {
    SubqDatum p = aubert_pair(d);
    Witness w = witness_tau(ctx, p);
    Segment du = w.langlands.entries().front();
    return Witness{GLElt::key(Basis::Zeta, Multisegment{du}), mw_dual(Multisegment{du}),
                   "s(" + du.str() + ") = delta(" + du.str() + ")^t"};
  }
  Shape s = shape_of(d);
  return Witness{delta_of(s.du), Multisegment{s.du}, "delta(" + s.du.str() + ")"};
}

FormalSum<LanglandsDatum> comp_series_expand(const Context& ctx, const std::vector<Segment>& a,
                                             const Segment& dk,
                                             const std::vector<Segment>& chain,
                                             const std::optional<Segment>& dl) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::HypothesisViolation, why); };
  const LineId& line = dk.line;
  const Line& l = ctx.line(line);
  if (!l.alpha) fail("line '" + line + "' has no reducibility point");
  auto same_line = [&](const Segment& s) {
    if (s.line != line) fail("segment " + s.str() + " is off the line of " + dk.str());
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    same_line(a[i]);
    if (i + 1 < a.size() && !(a[i].b > a[i + 1].e)) fail("a must be decreasing and disjoint");
  }
  if (!a.empty() && !(a.back().b > dk.e)) fail("a must lie above " + dk.str());
  HalfInt floor = dk.b;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    same_line(chain[i]);
    if (i == 0 && chain[0].e != dk.b - 1) fail("chain must start juxtaposed below " + dk.str());
    if (i > 0 && !(chain[i].e < chain[i - 1].b)) fail("chain must be decreasing and disjoint");
    floor = chain[i].b;
  }
  if (dl) {
    same_line(*dl);
    if (dl->b != *l.alpha) fail("the tempered segment must start at " + l.alpha->str());
    if (!(dl->e < floor)) fail("the tempered segment must lie below the chain");
  }

  const std::string& sigma = ctx.sigma();
  auto st = [&](const std::optional<Segment>& s) {
    if (!s) return TemperedSymbol::cusp(sigma);
    return TemperedSymbol::of_base(StGen{sigma, line, s->b, s->length() - 1});
  };
  FormalSum<LanglandsDatum> r;
  if (!chain.empty()) {
    std::vector<Segment> b(chain.begin() + 1, chain.end());
    Segment joined = Segment::make(line, chain[0].b, dk.e);
    r.add(LanglandsDatum::make(ms_of(a) + Multisegment{dk, chain[0]} + ms_of(b), st(dl)), 1);
    r.add(LanglandsDatum::make(ms_of(a) + Multisegment{joined} + ms_of(b), st(dl)), 1);
    return r;
  }
  if (dl) {
    if (dl->e != dk.b - 1) fail("the tempered segment must be juxtaposed below " + dk.str());
    r.add(LanglandsDatum::make(ms_of(a) + Multisegment{dk}, st(dl)), 1);
    r.add(LanglandsDatum::make(ms_of(a), st(Segment::make(line, dl->b, dk.e))), 1);
    return r;
  }
  if (dk.b != *l.alpha) fail(dk.str() + " must start at the reducibility point " + l.alpha->str());
  r.add(LanglandsDatum::make(ms_of(a) + Multisegment{dk}, st(std::nullopt)), 1);
  r.add(LanglandsDatum::make(ms_of(a), st(dk)), 1);
  return r;
}

bool verify_hd_identity(const SubqDatum& d) {
  if (classify(d) != CaseTag::CaseB) throw Error(ErrorCode::WrongCase, "expected a CaseB datum");
  Shape s = shape_of(d);
  const LineId& line = d.line;
  Multisegment key = Multisegment{s.du} + ms_of(s.a) + Multisegment{s.dk} + ms_of(s.b);
  GLElt hd = highest_derivative(GLElt::key(Basis::Zeta, key));
  bool rule = hd == GLElt::key(Basis::Zeta, ms_minus(key));

  auto du_m = seg_minus(s.du);
  auto dk_m = seg_minus(s.dk);
  auto big_m = seg_minus(s.big);
  bool juxtaposed = du_m && dk_m && big_m && du_m->e + 1 == dk_m->b && du_m->b == big_m->b &&
                    dk_m->e == big_m->e;

  Multisegment a_m = ms_minus(ms_of(s.a));
  Multisegment target = big_m ? a_m + Multisegment{*big_m} : a_m;
  Multisegment split = a_m;
  if (du_m) split = split + Multisegment{*du_m};
  if (dk_m) split = split + Multisegment{*dk_m};
  bool same_support = support(split) == support(target);
  bool contained = support_difference(support(ms_minus(key)), support(target)).has_value();

  Multisegment irr = ms_of(s.a) + Multisegment{s.big} + ms_of(s.b) +
                     Multisegment{Segment::singleton(line, s.alpha_p)};
  bool irr_hd = highest_derivative(GLElt::key(Basis::Zeta, irr)) == GLElt::key(Basis::Zeta, target);
  bool supports = support(key) == support(irr);
  return rule && juxtaposed && same_support && contained && irr_hd && supports;
}

CertReport check_length_ge5(const Context& ctx, const SubqDatum& d) {
  CaseTag tag = classify(d);
  if (tag == CaseTag::GenSteinberg || tag == CaseTag::CoGenSteinberg)
    throw Error(ErrorCode::WrongCase, std::string("no length check for ") +
                                          std::string(to_string(tag)));
  if (tag == CaseTag::CaseC) return dualize(ctx, length_report(ctx, aubert_pair(d)), d);
  return length_report(ctx, d);
}

CertReport check_mult_le4(const Context& ctx, const SubqDatum& d) {
  CaseTag tag = classify(d);
  if (tag == CaseTag::GenSteinberg || tag == CaseTag::CoGenSteinberg)
    throw Error(ErrorCode::WrongCase, std::string("no multiplicity check for ") +
                                          std::string(to_string(tag)));
  if (tag == CaseTag::CaseC) return dualize(ctx, mult_report(ctx, aubert_pair(d)), d);
  return mult_report(ctx, d);
}

Context family_context(const LineId& line, HalfInt alpha, const std::string& sigma) {
  return Context(sigma, {Line{line, true, alpha}});
}

Prop41Entry check_prop41_datum(const Context& ctx, const SubqDatum& d) {
  Prop41Entry e;
  e.datum = d;
  e.tag = classify(d);
  if (e.tag != CaseTag::GenSteinberg && e.tag != CaseTag::CoGenSteinberg) {
    e.length = check_length_ge5(ctx, d);
    e.mult = check_mult_le4(ctx, d);
  }
  return e;
}

std::vector<Prop41Entry> check_prop41(const std::vector<HalfInt>& alphas, std::int64_t min_n,
                                      std::int64_t max_n, const LineId& line,
                                      const std::string& sigma) {
  std::vector<std::pair<std::size_t, SubqDatum>> jobs;
  std::vector<Context> contexts;
  for (HalfInt a : alphas) {
    contexts.push_back(family_context(line, a, sigma));
    for (std::int64_t n = min_n; n <= max_n; ++n)
      for (auto& d : enumerate_subquotients(contexts.back(), line, a, n))
        jobs.emplace_back(contexts.size() - 1, std::move(d));
  }
  std::vector<Prop41Entry> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < jobs.size(); i += workers) {
      try {
        out[i] = check_prop41_datum(contexts[jobs[i].first], jobs[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace cuspline
