#pragma once

// Expression language over the library:
//
//   sum   := rt (('+' | '-') rt)*
//   rt    := prod ('|x|' rt)?
//   prod  := unary ('*' unary)*
//   unary := '-' unary | atom
//   atom  := INT | seg | 'St(' half ',' INT ')@' ID | 'CoSt(' half ',' INT ')@' ID
//          | 'sigma' | FUNC '(' sum ')' | '(' sum ')'
//   seg   := ('d' | 'z') '[' half (',' half)? ']@' ID
//   half  := '-'? INT ('/' INT)?
//   FUNC  := mstar | Mstar | Mclosed | MGL | mustar | mw | dual | D | hd | sGL

#include <functional>
#include <variant>

#include "cuspline/classical.hpp"

namespace cuspline::cli {

enum class Type { Int, GLDelta, GLZeta, TensorDelta, TensorZeta, Class, TensorClass };
std::string_view to_string(Type t);

using Value = std::variant<Coeff, GLElt, TensorGL, ClassElt, cuspline::TensorClass>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, std::string message, std::vector<std::string> expected = {});
  std::size_t position() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }
  bool type_error() const { return expected_.empty(); }

 private:
  std::size_t pos_;
  std::vector<std::string> expected_;
};

struct Expr {
  Type type = Type::Int;
  std::function<Value(const Context&)> eval;
  std::vector<LineId> lines;  // lines mentioned by atoms
};

// Throws ParseError on syntax and type errors.
Expr parse(std::string_view text);

}  // namespace cuspline::cli
