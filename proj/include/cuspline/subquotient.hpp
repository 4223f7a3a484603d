#pragma once

// Irreducible subquotients of nu^(a+n) rho x ... x nu^a rho x| sigma and
// instance checkers for the length >= 5 and multiplicity <= 4 arguments.

#include "cuspline/classical.hpp"

namespace cuspline {

enum class CaseTag { GenSteinberg, CoGenSteinberg, CaseA, CaseB, CaseC };
std::string_view to_string(CaseTag t);

enum class StepStatus { Verified, Axiom, Failed };
std::string_view to_string(StepStatus s);

struct Step {
  std::string id;
  std::string claim;
  StepStatus status = StepStatus::Verified;
  std::string citation;  // AXIOM steps only
};

struct Witness {
  GLElt symbol;             // delta(D_u), or s(D_u) for the dual witness
  Multisegment langlands;   // Langlands multisegment of the witness
  std::string description;
};

// A Langlands datum; for the dual case the certificate stands for the
// Aubert dual of the datum.
struct Certificate {
  LanglandsDatum datum;
  bool aubert_dual = false;

  auto operator<=>(const Certificate&) const = default;
};

struct CertReport {
  SubqDatum datum;
  CaseTag tag = CaseTag::CaseA;
  Witness witness;
  std::vector<Certificate> certificates;
  std::vector<Step> steps;
  std::optional<std::int64_t> multiplicity_bound;
  std::vector<std::pair<std::string, Coeff>> breakdown;

  bool certificates_distinct() const;
  bool pass() const;
};

std::vector<SubqDatum> enumerate_subquotients(const Context& ctx, const LineId& line,
                                              HalfInt alpha, std::int64_t n);
CaseTag classify(const SubqDatum& d);
Witness witness_tau(const Context& ctx, const SubqDatum& d);

// Two-term composition series of a standard induced representation.
// chain empty:     L(a, Dk) x| delta(Dl; sigma)
//                  = L(a + Dk; delta(Dl; sigma)) + L(a; delta(Dk u Dl; sigma))
//                  (Dl absent: the second term is L(a; delta(Dk; sigma)))
// chain nonempty:  with D' = chain[0] juxtaposed below Dk and b = chain[1..],
//                  L(a + Dk + D' + b; delta(Dl; sigma)) + L(a + (Dk u D') + b; delta(Dl; sigma))
FormalSum<LanglandsDatum> comp_series_expand(const Context& ctx, const std::vector<Segment>& a,
                                             const Segment& dk,
                                             const std::vector<Segment>& chain,
                                             const std::optional<Segment>& dl);

CertReport check_length_ge5(const Context& ctx, const SubqDatum& d);
CertReport check_mult_le4(const Context& ctx, const SubqDatum& d);
bool verify_hd_identity(const SubqDatum& d);

struct Prop41Entry {
  SubqDatum datum;
  CaseTag tag = CaseTag::CaseA;
  std::optional<CertReport> length;
  std::optional<CertReport> mult;

  bool eligible() const { return length.has_value(); }
  bool pass() const;
};

// Context with a single selfdual line reducing at alpha.
Context family_context(const LineId& line, HalfInt alpha, const std::string& sigma = "sigma");

// Runs both checkers on every datum for each alpha and n in [min_n, max_n].
std::vector<Prop41Entry> check_prop41(const std::vector<HalfInt>& alphas, std::int64_t min_n,
                                      std::int64_t max_n, const LineId& line = "rho",
                                      const std::string& sigma = "sigma");
Prop41Entry check_prop41_datum(const Context& ctx, const SubqDatum& d);

}  // namespace cuspline
