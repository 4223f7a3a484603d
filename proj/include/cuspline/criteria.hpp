#pragma once

// Unitarizability of irreducible generic representations: the conditions
// on exponent multisets, and the factorization along cuspidal lines.

#include <map>

#include <boost/rational.hpp>

#include "cuspline/core.hpp"

namespace cuspline {

using Rational = boost::rational<std::int64_t>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// Exponents e(delta_i) of the factors with unitary part delta.
struct GenericEntry {
  std::string label;
  std::optional<std::string> dual_label;  // label of the contragredient, if not selfdual
  bool selfdual = true;
  std::vector<Rational> exponents;
  bool halfred = false;  // nu^(1/2) delta x| 1 reducible
  bool tau_red = false;  // delta x| tau reducible
};

using GenericDatum = std::vector<GenericEntry>;

struct GenericVerdict {
  bool unitarizable = true;
  std::string failed;  // "1", "2", "3-order", "3a", "3b", "3c", "3d"; empty when passing
  std::string failed_label;
  std::vector<std::string> trace;
};

GenericVerdict generic_unitarizable(const GenericDatum& d);

// nu^(1/2) delta(D) x| 1 reduces iff card(D) is odd for alpha not in Z,
// and iff card(D) is even for alpha in Z.
bool halfred_from_parity(HalfInt alpha, std::int64_t card);

// delta(D) x| tau reduces iff alpha in D, D is not a Jordan block of the
// square integrable part and D is not among the induced segments of tau.
bool tau_reducible(HalfInt alpha, const Segment& d, const std::vector<Segment>& jord,
                   const std::vector<Segment>& gammas);

// delta_i = nu^e delta(base) with base symmetric.
struct GenericFactor {
  Segment base;
  Rational exponent;
};

struct LineTempered {
  std::vector<Segment> jord;
  std::vector<Segment> gammas;
};

struct GenericDescription {
  std::vector<GenericFactor> factors;
  std::map<LineId, LineTempered> tempered;
};

// Groups the factors by line and attaches the projected tempered data.
std::map<LineId, GenericDescription> generic_line_factor(const Context& ctx,
                                                         const GenericDescription& d);
// Entries with reducibility flags from the configured reducibility points.
GenericDatum generic_datum(const Context& ctx, const GenericDescription& d);
GenericVerdict decide_generic(const Context& ctx, const GenericDescription& d);
// Decides every line separately; unitarizable iff all lines are.
GenericVerdict decide_generic_by_line(const Context& ctx, const GenericDescription& d);

GenericDescription transport_generic(const Context& ctx, const GenericDescription& d,
                                     const LineId& from, const LineId& to);

}  // namespace cuspline
