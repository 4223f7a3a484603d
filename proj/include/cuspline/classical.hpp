#pragma once

// R(S): induced symbols pi x| base over a cuspidal sigma, the comodule map
// mu*, Langlands data for classical groups and the e_* order.

#include <functional>
#include <variant>

#include "cuspline/gl_hopf.hpp"

namespace cuspline {

// ---------------------------------------------------------------------------
// Base symbols

struct Cusp {
  std::string sigma;
  auto operator<=>(const Cusp&) const = default;
};

// delta([nu^a rho, nu^(a+n) rho]; sigma)
struct StGen {
  std::string sigma;
  LineId line;
  HalfInt a;
  std::int64_t n = 0;
  auto operator<=>(const StGen&) const = default;
};

// L(nu^(a+n) rho, ..., nu^a rho; sigma)
struct CoStGen {
  std::string sigma;
  LineId line;
  HalfInt a;
  std::int64_t n = 0;
  auto operator<=>(const CoStGen&) const = default;
};

using BaseSymbol = std::variant<Cusp, StGen, CoStGen>;

const std::string& base_sigma(const BaseSymbol& b);
std::optional<LineId> base_line(const BaseSymbol& b);
// Number of support points carried by the base (sigma itself counts 0).
std::int64_t base_degree(const BaseSymbol& b);
// Checks that St/CoSt sit at the reducibility point of their line.
void validate_base(const Context& ctx, const BaseSymbol& b);

struct InducedSymbol {
  Multisegment gl;  // delta basis
  BaseSymbol base;
  auto operator<=>(const InducedSymbol&) const = default;
};

using ClassElt = FormalSum<InducedSymbol>;

ClassElt class_key(InducedSymbol s, Coeff c = 1);
ClassElt cusp_elt(const std::string& sigma);

// Left factors of mu* may mix generators: the comultiplication of a
// CoStGen base produces zeta-type factors s([-(a+n), -(a+k+1)]). A monomial
// is the product delta(delta part) x s(zeta part); singleton zeta segments
// are stored in the delta part since the two generators agree there.
struct GLMonomial {
  Multisegment delta;
  Multisegment zeta;

  static GLMonomial make(Multisegment delta, Multisegment zeta);
  static GLMonomial of_delta(Multisegment delta) { return make(std::move(delta), {}); }

  bool generic() const { return zeta.empty(); }
  bool empty() const { return delta.empty() && zeta.empty(); }
  std::int64_t degree() const { return delta.degree() + zeta.degree(); }
  Support support() const;
  std::vector<LineId> lines() const;
  GLMonomial operator*(const GLMonomial& o) const;

  auto operator<=>(const GLMonomial&) const = default;
};

using ClassPair = std::pair<GLMonomial, InducedSymbol>;
using TensorClass = FormalSum<ClassPair>;

// ---------------------------------------------------------------------------
// Module and comodule structure

ClassElt rtimes(const GLElt& x, const ClassElt& y);
TensorClass mustar_base(const BaseSymbol& b);
TensorClass mustar(const Context& ctx, const ClassElt& y);
GLElt s_GL(const Context& ctx, const ClassElt& y);

// Replaces every right factor ({[a]} ; Cusp) on a line with reducibility
// point a by StGen(a,0) + CoStGen(a,0): nu^a rho x| sigma has exactly these
// two constituents.
TensorClass split_reducible_point(const Context& ctx, const TensorClass& t);

Coeff mult_in(const TensorClass& t, const GLMonomial& left,
              const std::function<bool(const InducedSymbol&)>& rightpred);
Coeff mult_in(const TensorClass& t, const Multisegment& left,
              const std::function<bool(const InducedSymbol&)>& rightpred);

// ---------------------------------------------------------------------------
// Tempered symbols and Langlands data

struct TemperedSymbol {
  enum class Kind {
    Base,     // a base symbol (Cusp or StGen)
    TauPM,    // tau((D_u)_+-; sigma), D_u symmetric
    DeltaPM,  // delta(D_+-; sigma), D = [-a, c] with c > a
    IndTemp,  // delta(G1) x ... x delta(Gm) x| inner, all Gi symmetric
    Split,    // combination of single-line parts on distinct lines
  };

  Kind kind = Kind::Base;
  std::string sigma;
  BaseSymbol base = Cusp{};
  std::optional<Segment> seg;
  int sign = 0;
  std::vector<Segment> gammas;
  std::vector<TemperedSymbol> parts;  // IndTemp: exactly one inner; Split: the parts

  static TemperedSymbol cusp(const std::string& sigma);
  static TemperedSymbol of_base(BaseSymbol b);
  static TemperedSymbol tau(const Segment& du, int sign, const std::string& sigma);
  static TemperedSymbol delta_pm(const Segment& d, int sign, const std::string& sigma);
  static TemperedSymbol ind(std::vector<Segment> gammas, TemperedSymbol inner);
  static TemperedSymbol split(std::vector<TemperedSymbol> parts);

  bool is_cusp() const { return kind == Kind::Base && std::holds_alternative<Cusp>(base); }
  std::vector<LineId> lines() const;
  std::int64_t degree() const;

  std::strong_ordering operator<=>(const TemperedSymbol&) const = default;
  bool operator==(const TemperedSymbol&) const = default;
};

struct LanglandsDatum {
  Multisegment ms;  // every center > 0
  TemperedSymbol temp;

  static LanglandsDatum make(Multisegment ms, TemperedSymbol temp);
  std::int64_t degree() const { return ms.degree() + temp.degree(); }
  std::vector<LineId> lines() const;

  std::strong_ordering operator<=>(const LanglandsDatum&) const = default;
  bool operator==(const LanglandsDatum&) const = default;
};

LanglandsDatum classical_contragredient(const LanglandsDatum& d);
TemperedSymbol classical_contragredient(const TemperedSymbol& t);

using Exponents = std::vector<HalfInt>;

// Segment centers repeated by length, sorted descending, padded with zeros.
Exponents estar(const LanglandsDatum& d, std::int64_t total);
Exponents estar(const InducedSymbol& s, std::int64_t total);
bool leq_estar(const Exponents& t1, const Exponents& t2);

// ---------------------------------------------------------------------------
// The regular family nu^(a+n) rho x ... x nu^a rho x| sigma

struct SubqDatum {
  LineId line;
  HalfInt alpha;
  std::int64_t n = 0;
  std::vector<Segment> blocks;  // top block first
  std::optional<Segment> bottom;

  auto operator<=>(const SubqDatum&) const = default;
};

void validate(const SubqDatum& d);
LanglandsDatum to_langlands(const SubqDatum& d, const std::string& sigma);
// Inverse of to_langlands on the family; nullopt if the datum is outside it.
std::optional<SubqDatum> from_langlands(const Context& ctx, const LanglandsDatum& d);

// Aubert-Schneider-Stuhler involution restricted to the family: the
// Zelevinsky dual of the full tiling, with the bottom block toggled between
// the tempered and the Langlands position.
SubqDatum aubert_pair(const SubqDatum& d);

}  // namespace cuspline
