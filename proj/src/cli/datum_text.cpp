#include "cuspline/cli/datum_text.hpp"

#include <cctype>

namespace cuspline::cli {

namespace {

class Reader {
 public:
  Reader(const Context& ctx, std::string_view text) : ctx_(ctx), s_(text) {}

  LanglandsDatum datum() {
    LanglandsDatum d;
    skip();
    if (word_is("L") && peek_after_word('(')) {
      word();
      expect('(');
      std::vector<Segment> segs;
      skip();
      if (peek() != ';') {
        segs.push_back(segment());
        while (accept(',')) segs.push_back(segment());
      }
      expect(';');
      TemperedSymbol t = tempered();
      expect(')');
      d = LanglandsDatum::make(Multisegment(std::move(segs)), std::move(t));
    } else {
      d = LanglandsDatum::make(Multisegment{}, tempered());
    }
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return d;
  }

  Segment segment() {
    expect('[');
    HalfInt b = half();
    HalfInt e = b;
    if (accept(',')) e = half();
    expect(']');
    expect('@');
    std::string line = word();
    if (line.empty()) fail("expected a line name");
    try {
      return Segment::make(line, b, e);
    } catch (const Error& err) {
      fail(err.what());
    }
  }

  void finish() {
    skip();
    if (i_ != s_.size()) fail("trailing input");
  }

 private:
  const Context& ctx_;
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::MalformedDatum, msg + " at position " + std::to_string(i_) + " in '" +
                                               std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' ||
                             s_[j] == '~'))
      ++j;
    std::string w(s_.substr(i_, j - i_));
    i_ = j;
    return w;
  }
  bool word_is(const char* w) {
    std::size_t save = i_;
    bool r = word() == w;
    i_ = save;
    return r;
  }
  bool peek_after_word(char c) {
    std::size_t save = i_;
    word();
    bool r = peek() == c;
    i_ = save;
    return r;
  }
  std::int64_t integer() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected an integer");
    std::int64_t v = std::stoll(std::string(s_.substr(i_, j - i_)));
    i_ = j;
    return v;
  }
  HalfInt half() {
    bool neg = accept('-');
    std::int64_t num = integer();
    std::int64_t den = 1;
    if (accept('/')) den = integer();
    if (den != 1 && den != 2) fail("only halves are allowed");
    HalfInt h = den == 2 ? HalfInt::from_doubled(num) : HalfInt::from_int(num);
    return neg ? -h : h;
  }
  int sign() {
    if (accept('+')) return 1;
    if (accept('-')) return -1;
    fail("expected '+' or '-'");
  }
  std::string sigma_suffix() {
    if (!accept(':')) return ctx_.sigma();
    std::string s = word();
    if (s.empty()) fail("expected a sigma name");
    return s;
  }

  TemperedSymbol tempered() {
    std::string w = word();
    if (w.empty()) fail("expected a tempered symbol");
    if (w == "St") {
      expect('(');
      HalfInt a = half();
      expect(',');
      std::int64_t n = integer();
      expect(')');
      expect('@');
      std::string line = word();
      std::string sigma = sigma_suffix();
      StGen st{sigma, line, a, n};
      validate_base(ctx_, st);
      return TemperedSymbol::of_base(st);
    }
    if (w == "delta") {
      expect('(');
      Segment s = segment();
      expect(')');
      std::string sigma = sigma_suffix();
      StGen st{sigma, s.line, s.b, s.length() - 1};
      validate_base(ctx_, st);
      return TemperedSymbol::of_base(st);
    }
    if (w == "tau" || w == "deltapm") {
      expect('(');
      Segment s = segment();
      expect(',');
      int sg = sign();
      expect(')');
      std::string sigma = sigma_suffix();
      return w == "tau" ? TemperedSymbol::tau(s, sg, sigma) : TemperedSymbol::delta_pm(s, sg, sigma);
    }
    if (w == "ind") {
      expect('(');
      std::vector<Segment> gammas{segment()};
      while (accept(',')) gammas.push_back(segment());
      expect(';');
      TemperedSymbol inner = tempered();
      expect(')');
      return TemperedSymbol::ind(std::move(gammas), std::move(inner));
    }
    if (w == "split") {
      expect('(');
      std::vector<TemperedSymbol> parts{tempered()};
      while (accept(',')) parts.push_back(tempered());
      expect(')');
      return TemperedSymbol::split(std::move(parts));
    }
    return TemperedSymbol::cusp(w);
  }
};

std::string suffix(const std::string& sigma, const std::string& default_sigma) {
  return sigma == default_sigma ? std::string() : ":" + sigma;
}

}  // namespace

std::string format_tempered(const TemperedSymbol& t, const std::string& default_sigma) {
  using Kind = TemperedSymbol::Kind;
  switch (t.kind) {
    case Kind::Base:
      if (const auto* st = std::get_if<StGen>(&t.base))
        return "St(" + st->a.str() + "," + std::to_string(st->n) + ")@" + st->line +
               suffix(t.sigma, default_sigma);
      return t.sigma;
    case Kind::TauPM:
    case Kind::DeltaPM:
      return std::string(t.kind == Kind::TauPM ? "tau(" : "deltapm(") + t.seg->str() + "," +
             (t.sign > 0 ? "+" : "-") + ")" + suffix(t.sigma, default_sigma);
    case Kind::IndTemp: {
      std::string s = "ind(";
      for (std::size_t i = 0; i < t.gammas.size(); ++i) s += (i ? "," : "") + t.gammas[i].str();
      return s + "; " + format_tempered(t.parts.front(), default_sigma) + ")";
    }
    case Kind::Split: {
      std::string s = "split(";
      for (std::size_t i = 0; i < t.parts.size(); ++i)
        s += (i ? ", " : "") + format_tempered(t.parts[i], default_sigma);
      return s + ")";
    }
  }
  return "?";
}

std::string format_datum(const LanglandsDatum& d, const std::string& default_sigma) {
  std::string s = "L(";
  for (std::size_t i = 0; i < d.ms.size(); ++i) s += (i ? "," : "") + d.ms.entries()[i].str();
  return s + "; " + format_tempered(d.temp, default_sigma) + ")";
}

LanglandsDatum parse_datum(const Context& ctx, std::string_view text) {
  return Reader(ctx, text).datum();
}

SubqDatum parse_subq_datum(const Context& ctx, std::string_view text) {
  LanglandsDatum d = parse_datum(ctx, text);
  auto s = from_langlands(ctx, d);
  if (!s)
    throw Error(ErrorCode::InvalidArgument,
                "'" + std::string(text) +
                    "' is not a subquotient datum of nu^(a+n) rho x ... x nu^a rho x| sigma");
  return *s;
}

Segment parse_segment(std::string_view text) {
  Context ctx;
  Reader r(ctx, text);
  Segment s = r.segment();
  r.finish();
  return s;
}

}  // namespace cuspline::cli
