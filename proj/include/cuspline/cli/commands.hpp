#pragma once

// Command surface of the `cuspline` tool. Exit status: 0 success or PASS,
// 1 a checked property failed, 2 usage, parse or input error.

#include <iosfwd>
#include <string>

#include "cuspline/core.hpp"

namespace cuspline::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Context file: one `key = value` per line, '#' starts a comment.
//   sigma = ID
//   line.ID.alpha = half
//   line.ID.selfdual = true | false
// Lines are created in order of first mention.
Context parse_context_text(const std::string& text);
Context load_context_file(const std::string& path);

// NAME or NAME:alpha, as accepted by --line.
Line parse_line_spec(const std::string& spec);

}  // namespace cuspline::cli
