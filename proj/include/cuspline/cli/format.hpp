#pragma once

// Text and JSON rendering. Half-integers are serialized as {"num2": 2x} and
// rationals as {"num": p, "den": q}; no floating point appears in payloads.

#include "json.hpp"

#include "cuspline/cli/dsl.hpp"
#include "cuspline/criteria.hpp"
#include "cuspline/subquotient.hpp"

namespace cuspline::cli {

using nlohmann::json;

json to_json(HalfInt h);
json to_json(const Rational& r);
json to_json(const Segment& s);
json to_json(const Multisegment& m);
json to_json(const TemperedSymbol& t, const std::string& default_sigma);
json to_json(const LanglandsDatum& d, const std::string& default_sigma);
json to_json(const SubqDatum& d);
json to_json(const CertReport& r, const std::string& default_sigma);
json to_json(const GenericVerdict& v);
json to_json(const Context& ctx);
json value_to_json(const Value& v, Type t);

std::string gl_key_text(const Multisegment& m, Basis b);
std::string base_text(const BaseSymbol& b);
std::string induced_text(const InducedSymbol& s);
std::string monomial_text(const GLMonomial& m);

// One signed term per line.
std::string value_text(const Value& v);
std::string report_text(const CertReport& r, const std::string& default_sigma);
std::string subq_text(const SubqDatum& d, const std::string& sigma);

}  // namespace cuspline::cli
