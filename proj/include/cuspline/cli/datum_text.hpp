#pragma once

// Text form of Langlands data:
//
//   datum := 'L(' [seg (',' seg)*] ';' temp ')' | temp
//   seg   := '[' half (',' half)? ']@' ID
//   temp  := ID                                    cuspidal sigma
//          | 'St(' half ',' INT ')@' ID [':' ID]   delta([a, a+n]; sigma)
//          | 'delta(' seg ')' [':' ID]             same, by segment
//          | 'tau(' seg ',' sign ')' [':' ID]
//          | 'deltapm(' seg ',' sign ')' [':' ID]
//          | 'ind(' seg (',' seg)* ';' temp ')'
//          | 'split(' temp (',' temp)* ')'
//   sign  := '+' | '-'
//
// The optional ':' ID names sigma when it differs from the context's.

#include "cuspline/classical.hpp"

namespace cuspline::cli {

LanglandsDatum parse_datum(const Context& ctx, std::string_view text);
std::string format_datum(const LanglandsDatum& d, const std::string& default_sigma);
std::string format_tempered(const TemperedSymbol& t, const std::string& default_sigma);

// A datum of the regular family on a configured line.
SubqDatum parse_subq_datum(const Context& ctx, std::string_view text);

Segment parse_segment(std::string_view text);

}  // namespace cuspline::cli
