#include "cuspline/cli/dsl.hpp"

#include <algorithm>
#include <cctype>

namespace cuspline::cli {

std::string_view to_string(Type t) {
  switch (t) {
    case Type::Int: return "integer";
    case Type::GLDelta: return "GL element (delta basis)";
    case Type::GLZeta: return "GL element (zeta basis)";
    case Type::TensorDelta: return "GL tensor (delta basis)";
    case Type::TensorZeta: return "GL tensor (zeta basis)";
    case Type::Class: return "classical element";
    case Type::TensorClass: return "classical tensor";
  }
  return "?";
}

ParseError::ParseError(std::size_t pos, std::string message, std::vector<std::string> expected)
    : std::runtime_error(std::move(message)), pos_(pos), expected_(std::move(expected)) {}

namespace {

enum class Tok { Int, Ident, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '~'))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (s.substr(i, 3) == "|x|") {
      out.push_back({Tok::Punct, "|x|", i});
      i += 3;
      continue;
    }
    if (std::string_view("[](),@*+-/").find(ch) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, ch), i});
      ++i;
      continue;
    }
    throw ParseError(i, std::string("unexpected character '") + ch + "'",
                     {"number", "identifier", "operator"});
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_gl(Type t) { return t == Type::GLDelta || t == Type::GLZeta; }
bool is_tensor_gl(Type t) { return t == Type::TensorDelta || t == Type::TensorZeta; }

Value scale(Coeff k, const Value& v) {
  return std::visit(
      [k](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Coeff>)
          return k * x;
        else if constexpr (std::is_same_v<T, GLElt> || std::is_same_v<T, TensorGL>)
          return k * x;
        else
          return Coeff{k} * x;
      },
      v);
}

Value add(const Value& a, const Value& b, Coeff sign) {
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Coeff>)
          return x + sign * y;
        else if constexpr (std::is_same_v<T, GLElt> || std::is_same_v<T, TensorGL>)
          return sign > 0 ? x + y : x - y;
        else
          return sign > 0 ? x + y : x - y;
      },
      a);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Expr run() {
    Expr e = sum();
    if (peek().kind != Tok::End) fail_expected({"'+'", "'-'", "'*'", "'|x|'", "end of input"});
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  Token take() { return toks_[at_++]; }

  [[noreturn]] void fail_expected(std::vector<std::string> expected) const {
    std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i)
      msg += (i ? (i + 1 == expected.size() ? " or " : ", ") : "") + expected[i];
    throw ParseError(peek().pos, msg + ", found " + found, std::move(expected));
  }
  [[noreturn]] static void type_error(std::size_t pos, const std::string& msg) {
    throw ParseError(pos, "type error: " + msg);
  }

  void expect(const char* p) {
    if (!is_punct(p)) fail_expected({std::string("'") + p + "'"});
    ++at_;
  }

  std::int64_t integer() {
    if (peek().kind != Tok::Int) fail_expected({"integer"});
    Token t = take();
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.pos, "integer out of range");
    }
  }

  HalfInt half() {
    bool neg = false;
    if (is_punct("-")) {
      ++at_;
      neg = true;
    }
    std::size_t pos = peek().pos;
    std::int64_t num = integer();
    std::int64_t den = 1;
    if (is_punct("/")) {
      ++at_;
      den = integer();
    }
    if (den != 1 && den != 2) throw ParseError(pos, "only halves are allowed, got denominator " + std::to_string(den));
    HalfInt h = den == 2 ? HalfInt::from_doubled(num) : HalfInt::from_int(num);
    return neg ? -h : h;
  }

  LineId at_line() {
    expect("@");
    if (peek().kind != Tok::Ident) fail_expected({"line name"});
    return take().text;
  }

  Expr sum() {
    Expr lhs = rt();
    while (is_punct("+") || is_punct("-")) {
      Token op = take();
      Expr rhs = rt();
      if (lhs.type != rhs.type)
        type_error(op.pos, "cannot combine " + std::string(to_string(lhs.type)) + " and " +
                               std::string(to_string(rhs.type)) + " with '" + op.text + "'");
      Coeff sign = op.text == "+" ? 1 : -1;
      lhs = combine(lhs, rhs, lhs.type, [sign](const Value& a, const Value& b, const Context&) {
        return add(a, b, sign);
      });
    }
    return lhs;
  }

  Expr rt() {
    Expr lhs = prod();
    if (!is_punct("|x|")) return lhs;
    Token op = take();
    Expr rhs = rt();
    if (lhs.type != Type::GLDelta || rhs.type != Type::Class)
      type_error(op.pos, "'|x|' needs a delta-basis GL element on the left and a classical "
                         "element on the right, got " +
                             std::string(to_string(lhs.type)) + " and " +
                             std::string(to_string(rhs.type)));
    return combine(lhs, rhs, Type::Class, [](const Value& a, const Value& b, const Context&) {
      return Value{rtimes(std::get<GLElt>(a), std::get<ClassElt>(b))};
    });
  }

  Expr prod() {
    Expr lhs = unary();
    while (is_punct("*")) {
      Token op = take();
      Expr rhs = unary();
      lhs = multiply(lhs, rhs, op.pos);
    }
    return lhs;
  }

  Expr multiply(const Expr& lhs, const Expr& rhs, std::size_t pos) {
    if (lhs.type == Type::Int && rhs.type == Type::Int)
      return combine(lhs, rhs, Type::Int, [](const Value& a, const Value& b, const Context&) {
        return Value{std::get<Coeff>(a) * std::get<Coeff>(b)};
      });
    if (lhs.type == Type::Int)
      return combine(lhs, rhs, rhs.type, [](const Value& a, const Value& b, const Context&) {
        return scale(std::get<Coeff>(a), b);
      });
    if (rhs.type == Type::Int)
      return combine(lhs, rhs, lhs.type, [](const Value& a, const Value& b, const Context&) {
        return scale(std::get<Coeff>(b), a);
      });
    if (is_gl(lhs.type) && lhs.type == rhs.type)
      return combine(lhs, rhs, lhs.type, [](const Value& a, const Value& b, const Context&) {
        return Value{gl_mul(std::get<GLElt>(a), std::get<GLElt>(b))};
      });
    if (is_tensor_gl(lhs.type) && lhs.type == rhs.type)
      return combine(lhs, rhs, lhs.type, [](const Value& a, const Value& b, const Context&) {
        return Value{tensor_mul(std::get<TensorGL>(a), std::get<TensorGL>(b))};
      });
    if ((is_gl(lhs.type) && is_gl(rhs.type)) || (is_tensor_gl(lhs.type) && is_tensor_gl(rhs.type)))
      type_error(pos, "basis mismatch in product: " + std::string(to_string(lhs.type)) + " * " +
                          std::string(to_string(rhs.type)));
    type_error(pos, "no product of " + std::string(to_string(lhs.type)) + " and " +
                        std::string(to_string(rhs.type)));
  }

  Expr unary() {
    if (is_punct("-")) {
      ++at_;
      Expr inner = unary();
      Expr out = inner;
      out.eval = [f = inner.eval](const Context& ctx) { return scale(-1, f(ctx)); };
      return out;
    }
    return atom();
  }

  template <class F>
  static Expr combine(const Expr& a, const Expr& b, Type t, F f) {
    Expr e;
    e.type = t;
    e.lines = a.lines;
    e.lines.insert(e.lines.end(), b.lines.begin(), b.lines.end());
    e.eval = [fa = a.eval, fb = b.eval, f](const Context& ctx) { return f(fa(ctx), fb(ctx), ctx); };
    return e;
  }

  static Expr constant(Type t, Value v, std::vector<LineId> lines = {}) {
    Expr e;
    e.type = t;
    e.lines = std::move(lines);
    e.eval = [v = std::move(v)](const Context&) { return v; };
    return e;
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Int) return constant(Type::Int, Value{integer()});
    if (is_punct("(")) {
      ++at_;
      Expr e = sum();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Ident)
      fail_expected({"number", "segment", "St(...)", "CoSt(...)", "sigma", "function", "'('"});

    const std::string name = t.text;
    const std::size_t pos = t.pos;
    if ((name == "d" || name == "z") && toks_[at_ + 1].kind == Tok::Punct &&
        toks_[at_ + 1].text == "[") {
      at_ += 2;
      HalfInt b = half();
      HalfInt e = b;
      if (is_punct(",")) {
        ++at_;
        e = half();
      }
      expect("]");
      LineId line = at_line();
      Segment s;
      try {
        s = Segment::make(line, b, e);
      } catch (const Error& err) {
        throw ParseError(pos, err.what());
      }
      Basis basis = name == "d" ? Basis::Delta : Basis::Zeta;
      return constant(name == "d" ? Type::GLDelta : Type::GLZeta,
                      Value{GLElt::key(basis, Multisegment{s})}, {line});
    }
    if (name == "St" || name == "CoSt") {
      ++at_;
      expect("(");
      HalfInt a = half();
      expect(",");
      std::int64_t n = integer();
      expect(")");
      LineId line = at_line();
      bool st = name == "St";
      Expr e;
      e.type = Type::Class;
      e.lines = {line};
      e.eval = [a, n, line, st](const Context& ctx) {
        BaseSymbol b = st ? BaseSymbol{StGen{ctx.sigma(), line, a, n}}
                          : BaseSymbol{CoStGen{ctx.sigma(), line, a, n}};
        validate_base(ctx, b);
        return Value{class_key(InducedSymbol{Multisegment{}, b})};
      };
      return e;
    }
    if (name == "sigma") {
      ++at_;
      Expr e;
      e.type = Type::Class;
      e.eval = [](const Context& ctx) { return Value{cusp_elt(ctx.sigma())}; };
      return e;
    }
    return function(name, pos);
  }

  Expr function(const std::string& name, std::size_t pos) {
    static const std::vector<std::string> known = {"mstar", "Mstar", "Mclosed", "MGL", "mustar",
                                                   "mw",    "dual",  "D",       "hd",  "sGL"};
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::vector<std::string> exp;
      for (const auto& k : known) exp.push_back(k);
      fail_expected(exp);
    }
    ++at_;
    expect("(");
    Expr arg = sum();
    expect(")");
    auto bad = [&](const std::string& want) {
      type_error(pos, name + " expects " + want + ", got " + std::string(to_string(arg.type)));
    };
    Expr out;
    out.lines = arg.lines;
    auto f = arg.eval;
    if (name == "mstar") {
      if (!is_gl(arg.type)) bad("a GL element");
      out.type = arg.type == Type::GLDelta ? Type::TensorDelta : Type::TensorZeta;
      out.eval = [f](const Context& ctx) { return Value{mstar(std::get<GLElt>(f(ctx)))}; };
    } else if (name == "Mstar") {
      if (arg.type != Type::GLDelta) bad("a delta-basis GL element");
      out.type = Type::TensorDelta;
      out.eval = [f](const Context& ctx) { return Value{Mstar(ctx, std::get<GLElt>(f(ctx)))}; };
    } else if (name == "Mclosed") {
      if (arg.type != Type::GLDelta) bad("a delta-basis GL element");
      out.type = Type::TensorDelta;
      out.eval = [f](const Context& ctx) {
        TensorGL r;
        r.basis = Basis::Delta;
        Value v = f(ctx);
        for (const auto& [key, c] : std::get<GLElt>(v).sum) {
          if (key.size() != 1)
            throw Error(ErrorCode::InvalidArgument, "Mclosed takes single segments, got " + key.str());
          r = r + c * Mstar_segment_closed(ctx, key.entries().front()).value;
        }
        return Value{r};
      };
    } else if (name == "MGL") {
      if (!is_gl(arg.type)) bad("a GL element");
      out.type = arg.type;
      out.eval = [f](const Context& ctx) { return Value{MstarGL(ctx, std::get<GLElt>(f(ctx)))}; };
    } else if (name == "mustar") {
      if (arg.type != Type::Class) bad("a classical element");
      out.type = Type::TensorClass;
      out.eval = [f](const Context& ctx) { return Value{mustar(ctx, std::get<ClassElt>(f(ctx)))}; };
    } else if (name == "mw") {
      if (!is_gl(arg.type)) bad("a GL element");
      out.type = arg.type;
      out.eval = [f](const Context& ctx) {
        GLElt x = std::get<GLElt>(f(ctx));
        GLElt r;
        r.basis = x.basis;
        for (const auto& [key, c] : x.sum) r.sum.add(mw_dual_multiline(key), c);
        return Value{r};
      };
    } else if (name == "dual") {
      if (!is_gl(arg.type)) bad("a GL element");
      out.type = arg.type;
      out.eval = [f](const Context& ctx) {
        return Value{gl_contragredient(ctx, std::get<GLElt>(f(ctx)))};
      };
    } else if (name == "D" || name == "hd") {
      if (arg.type != Type::GLZeta) bad("a zeta-basis GL element");
      out.type = Type::GLZeta;
      bool highest = name == "hd";
      out.eval = [f, highest](const Context& ctx) {
        GLElt x = std::get<GLElt>(f(ctx));
        return Value{highest ? highest_derivative(x) : derivative(x)};
      };
    } else {  // sGL
      if (arg.type != Type::Class) bad("a classical element");
      out.type = Type::GLDelta;
      out.eval = [f](const Context& ctx) { return Value{s_GL(ctx, std::get<ClassElt>(f(ctx)))}; };
    }
    return out;
  }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace cuspline::cli
