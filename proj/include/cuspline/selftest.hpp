#pragma once

// Acceptance suite shared by the `selftest` command and the acceptance test.

#include <random>

#include "cuspline/criteria.hpp"
#include "cuspline/jantzen.hpp"
#include "cuspline/subquotient.hpp"

namespace cuspline {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool ok = false;        // the checked property holds
  double seconds = 0;
  double limit = 0;       // seconds
  std::string detail;

  bool pass() const { return ok && seconds < limit; }
};

std::vector<CriterionResult> run_acceptance();
CriterionResult run_criterion(int id);
constexpr int kCriteria = 10;

// Every multisegment on `line` whose segments have both endpoints in
// [lo, hi] (integer or half-integer grid) and whose degree is <= max_degree.
std::vector<Multisegment> all_multisegments(const LineId& line, HalfInt lo, HalfInt hi,
                                            std::int64_t max_degree);

// Pseudorandom data for the Jantzen checks.
LanglandsDatum random_datum(std::mt19937& rng, const Context& ctx, const LineId& line);
Multisegment random_multisegment(std::mt19937& rng, const LineId& line, int max_segments);

}  // namespace cuspline
