#include <set>

#include "cuspline/subquotient.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cuspline;
using oracle::H;
using oracle::seg;

namespace {

// Every composition of [alpha, alpha+n] into consecutive blocks, with the
// lowest block either kept as a Langlands block or moved to the tempered part.
std::set<SubqDatum> compositions(HalfInt alpha, std::int64_t n) {
  std::set<SubqDatum> out;
  for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << n); ++cuts) {
    std::vector<Segment> bottom_up;
    HalfInt start = alpha;
    for (std::int64_t i = 0; i <= n; ++i) {
      bool cut_after = i == n || ((cuts >> i) & 1);
      if (cut_after) {
        bottom_up.push_back(Segment::make("rho", start, alpha + i));
        start = alpha + (i + 1);
      }
    }
    std::vector<Segment> top_first(bottom_up.rbegin(), bottom_up.rend());
    out.insert(SubqDatum{"rho", alpha, n, top_first, std::nullopt});
    Segment low = top_first.back();
    top_first.pop_back();
    out.insert(SubqDatum{"rho", alpha, n, top_first, low});
  }
  return out;
}

// Cuspidal support up to sign, as doubled absolute exponents.
void add_points(std::multiset<std::int64_t>& s, const Segment& seg) {
  for (auto x : oracle::points(seg)) s.insert(x < 0 ? -x : x);
}

void add_tempered(std::multiset<std::int64_t>& s, const TemperedSymbol& t) {
  using Kind = TemperedSymbol::Kind;
  switch (t.kind) {
    case Kind::Base:
      if (const auto* st = std::get_if<StGen>(&t.base))
        add_points(s, Segment::make(st->line, st->a, st->a + st->n));
      break;
    case Kind::TauPM:
    case Kind::DeltaPM:
      add_points(s, *t.seg);
      break;
    case Kind::IndTemp:
      for (const auto& g : t.gammas) add_points(s, g);
      add_tempered(s, t.parts.front());
      break;
    case Kind::Split:
      for (const auto& p : t.parts) add_tempered(s, p);
      break;
  }
}

std::multiset<std::int64_t> support_of(const LanglandsDatum& d) {
  std::multiset<std::int64_t> s;
  for (const auto& x : d.ms) add_points(s, x);
  add_tempered(s, d.temp);
  return s;
}

std::multiset<std::int64_t> support_of(const SubqDatum& d, const Segment& du) {
  std::multiset<std::int64_t> s;
  for (const auto& b : d.blocks) add_points(s, b);
  if (d.bottom) add_points(s, *d.bottom);
  add_points(s, du);
  return s;
}

const Step* find_step(const CertReport& r, const std::string& id) {
  for (const auto& s : r.steps)
    if (s.id == id) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("enumeration lists every composition with either bottom") {
  for (std::int64_t a2 : {1, 2, 3, 4}) {
    Context ctx = family_context("rho", H(a2));
    for (std::int64_t n = 0; n <= 6; ++n) {
      auto data = enumerate_subquotients(ctx, "rho", H(a2), n);
      CHECK(data.size() == (std::size_t{1} << (n + 1)));
      CHECK(std::set<SubqDatum>(data.begin(), data.end()) == compositions(H(a2), n));
      CHECK(std::is_sorted(data.begin(), data.end()));
    }
  }
}

TEST_CASE("n = 1 has four subquotients") {
  Context ctx = family_context("rho", H(1));
  auto data = enumerate_subquotients(ctx, "rho", H(1), 1);
  REQUIRE(data.size() == 4);
  std::map<CaseTag, int> tags;
  for (const auto& d : data) ++tags[classify(d)];
  CHECK(tags[CaseTag::GenSteinberg] == 1);
  CHECK(tags[CaseTag::CoGenSteinberg] == 1);
  CHECK(tags[CaseTag::CaseA] == 1);
  CHECK(tags[CaseTag::CaseC] == 1);
}

TEST_CASE("classification by block shape") {
  CHECK(classify(SubqDatum{"rho", H(1), 1, {}, seg("rho", 1, 3)}) == CaseTag::GenSteinberg);
  CHECK(classify(SubqDatum{"rho", H(1), 1, {seg("rho", 3, 3), seg("rho", 1, 1)}, std::nullopt}) ==
        CaseTag::CoGenSteinberg);
  CHECK(classify(SubqDatum{"rho", H(1), 1, {seg("rho", 1, 3)}, std::nullopt}) == CaseTag::CaseA);
  CHECK(classify(SubqDatum{"rho", H(1), 2, {seg("rho", 3, 5), seg("rho", 1, 1)}, std::nullopt}) ==
        CaseTag::CaseB);
  CHECK(classify(SubqDatum{"rho", H(1), 1, {seg("rho", 3, 3)}, seg("rho", 1, 1)}) ==
        CaseTag::CaseC);
}

TEST_CASE("the length checker certifies five distinct subquotients") {
  for (std::int64_t a2 : {1, 2, 3}) {
    Context ctx = family_context("rho", H(a2));
    for (std::int64_t n = 1; n <= 3; ++n)
      for (const auto& d : enumerate_subquotients(ctx, "rho", H(a2), n)) {
        CaseTag tag = classify(d);
        if (tag == CaseTag::GenSteinberg || tag == CaseTag::CoGenSteinberg) {
          CHECK_THROWS_AS(check_length_ge5(ctx, d), Error);
          continue;
        }
        CertReport r = check_length_ge5(ctx, d);
        CHECK(r.tag == tag);
        CHECK(r.certificates.size() >= 5);
        CHECK(r.certificates_distinct());
        CHECK(r.pass());
        for (const char* id : {"F1", "F2", "F3"}) {
          const Step* s = find_step(r, id);
          REQUIRE(s != nullptr);
          CHECK(s->status == StepStatus::Verified);
        }
        for (const auto& s : r.steps)
          if (s.status == StepStatus::Axiom) CHECK_FALSE(s.citation.empty());

        // Each certificate has the cuspidal support of delta(D_u) x| gamma.
        SubqDatum base = tag == CaseTag::CaseC ? aubert_pair(d) : d;
        Segment du = witness_tau(ctx, base).langlands.entries().front();
        CHECK(du.is_symmetric());
        for (const auto& c : r.certificates) {
          CHECK(c.aubert_dual == (tag == CaseTag::CaseC));
          CHECK(support_of(c.datum) == support_of(d, du));
        }
      }
  }
}

TEST_CASE("the multiplicity checker bounds by four") {
  for (std::int64_t a2 : {1, 2, 3}) {
    Context ctx = family_context("rho", H(a2));
    for (std::int64_t n = 1; n <= 3; ++n)
      for (const auto& d : enumerate_subquotients(ctx, "rho", H(a2), n)) {
        CaseTag tag = classify(d);
        if (tag == CaseTag::GenSteinberg || tag == CaseTag::CoGenSteinberg) continue;
        CertReport r = check_mult_le4(ctx, d);
        REQUIRE(r.multiplicity_bound.has_value());
        CHECK(*r.multiplicity_bound <= 4);
        Coeff sum = 0;
        for (const auto& [what, k] : r.breakdown) sum += k;
        CHECK(sum == *r.multiplicity_bound);
        CHECK(r.pass());
      }
  }
}

TEST_CASE("a report with a failed step does not pass") {
  Context ctx = family_context("rho", H(1));
  CertReport r = check_length_ge5(ctx, SubqDatum{"rho", H(1), 1, {seg("rho", 1, 3)}, std::nullopt});
  REQUIRE(r.pass());
  CertReport broken = r;
  broken.steps.front().status = StepStatus::Failed;
  CHECK_FALSE(broken.pass());
  CertReport uncited = r;
  for (auto& s : uncited.steps)
    if (s.status == StepStatus::Axiom) s.citation.clear();
  CHECK_FALSE(uncited.pass());
  CertReport few = r;
  few.certificates.resize(4);
  CHECK_FALSE(few.pass());
  CertReport dup = r;
  dup.certificates[1] = dup.certificates[0];
  CHECK_FALSE(dup.certificates_distinct());
  CHECK_FALSE(dup.pass());
}

TEST_CASE("the witness of a dual datum is the Zelevinsky generator") {
  Context ctx = family_context("rho", H(1));
  SubqDatum c{"rho", H(1), 1, {seg("rho", 3, 3)}, seg("rho", 1, 1)};
  Witness w = witness_tau(ctx, c);
  CHECK(w.symbol.basis == Basis::Zeta);
  CHECK(w.langlands == Multisegment{seg("rho", 1, 1), seg("rho", -1, -1)});
  Witness a = witness_tau(ctx, SubqDatum{"rho", H(1), 1, {seg("rho", 1, 3)}, std::nullopt});
  CHECK(a.langlands == Multisegment{seg("rho", -1, 1)});
}

TEST_CASE("two-term composition series") {
  Context ctx = family_context("rho", H(1));
  auto r = comp_series_expand(ctx, {}, seg("rho", 1, 3), {}, std::nullopt);
  CHECK(r.size() == 2);
  CHECK(r.coeff(LanglandsDatum::make(Multisegment{seg("rho", 1, 3)}, TemperedSymbol::cusp("sigma"))) == 1);
  CHECK(r.coeff(LanglandsDatum::make({}, TemperedSymbol::of_base(StGen{"sigma", "rho", H(1), 1}))) == 1);

  auto with_dl = comp_series_expand(ctx, {seg("rho", 7, 7)}, seg("rho", 3, 5), {}, seg("rho", 1, 1));
  CHECK(with_dl.coeff(LanglandsDatum::make(Multisegment{seg("rho", 7, 7), seg("rho", 3, 5)},
                                           TemperedSymbol::of_base(StGen{"sigma", "rho", H(1), 0}))) == 1);
  CHECK(with_dl.coeff(LanglandsDatum::make(Multisegment{seg("rho", 7, 7)},
                                           TemperedSymbol::of_base(StGen{"sigma", "rho", H(1), 2}))) == 1);

  auto chained = comp_series_expand(ctx, {}, seg("rho", 5, 5), {seg("rho", 3, 3)}, seg("rho", 1, 1));
  CHECK(chained.coeff(LanglandsDatum::make(Multisegment{seg("rho", 3, 5)},
                                           TemperedSymbol::of_base(StGen{"sigma", "rho", H(1), 0}))) == 1);
}

TEST_CASE("composition series hypotheses are enforced") {
  Context ctx = family_context("rho", H(1));
  auto code_of = [&](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([&] { comp_series_expand(ctx, {}, seg("rho", 3, 5), {}, std::nullopt); }) ==
        ErrorCode::HypothesisViolation);
  CHECK(code_of([&] { comp_series_expand(ctx, {seg("rho", 3, 3)}, seg("rho", 1, 3), {}, std::nullopt); }) ==
        ErrorCode::HypothesisViolation);
  CHECK(code_of([&] { comp_series_expand(ctx, {}, seg("rho", 5, 5), {seg("rho", 1, 1)}, std::nullopt); }) ==
        ErrorCode::HypothesisViolation);
}

TEST_CASE("highest derivative identity on CaseB data") {
  std::size_t count = 0;
  for (std::int64_t a2 : {1, 2, 3}) {
    Context ctx = family_context("rho", H(a2));
    for (std::int64_t n = 0; n <= 4; ++n)
      for (const auto& d : enumerate_subquotients(ctx, "rho", H(a2), n)) {
        if (classify(d) == CaseTag::CaseB) {
          ++count;
          CHECK(verify_hd_identity(d));
        } else {
          CHECK_THROWS_AS(verify_hd_identity(d), Error);
        }
      }
  }
  CHECK(count > 0);
}

TEST_CASE("the sweep covers every datum") {
  auto entries = check_prop41({H(1), H(2)}, 1, 3);
  CHECK(entries.size() == 2 * (4 + 8 + 16));
  for (const auto& e : entries) {
    CHECK(e.pass());
    CHECK(e.eligible() == (e.tag != CaseTag::GenSteinberg && e.tag != CaseTag::CoGenSteinberg));
  }
}
