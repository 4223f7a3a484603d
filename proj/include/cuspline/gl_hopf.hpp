#pragma once

// The graded Hopf algebra R of general linear groups, restricted to
// cuspidal lines. Elements are integer combinations of multisegment keys
// read in one of two rigid bases:
//
//   Delta: key {D1,...,Dk} stands for delta(D1) x ... x delta(Dk)
//   Zeta:  key {D1,...,Dk} stands for s(D1) x ... x s(Dk)
//
// Mixing bases is an error; no change of basis is offered.

#include <tuple>
#include <utility>

#include "cuspline/core.hpp"

namespace cuspline {

enum class Basis { Delta, Zeta };

std::string_view to_string(Basis b);

struct GLElt {
  Basis basis = Basis::Delta;
  FormalSum<Multisegment> sum;

  static GLElt unit(Basis b);
  static GLElt key(Basis b, Multisegment m, Coeff c = 1);

  bool operator==(const GLElt&) const = default;
};

using MsPair = std::pair<Multisegment, Multisegment>;
using MsTriple = std::tuple<Multisegment, Multisegment, Multisegment>;

struct TensorGL {
  Basis basis = Basis::Delta;
  FormalSum<MsPair> sum;

  bool operator==(const TensorGL&) const = default;
};

struct Tensor3GL {
  Basis basis = Basis::Delta;
  FormalSum<MsTriple> sum;

  bool operator==(const Tensor3GL&) const = default;
};

// Ring structure. All binary operations require matching bases.
GLElt operator+(const GLElt& x, const GLElt& y);
GLElt operator-(const GLElt& x, const GLElt& y);
GLElt operator*(Coeff k, const GLElt& x);
GLElt gl_mul(const GLElt& x, const GLElt& y);

TensorGL operator+(const TensorGL& x, const TensorGL& y);
TensorGL operator-(const TensorGL& x, const TensorGL& y);
TensorGL operator*(Coeff k, const TensorGL& x);
// Componentwise product in R (x) R.
TensorGL tensor_mul(const TensorGL& x, const TensorGL& y);

// m* on a single generator, following the segment formulas: in the Delta
// basis the left factors are the top parts, in the Zeta basis the bottom
// parts.
TensorGL mstar_segment(const Segment& s, Basis basis);
TensorGL mstar(const GLElt& x);

// Both iterated comultiplications; they agree by coassociativity.
Tensor3GL mstar_left_iterate(const GLElt& x);   // (m* (x) id) m*
Tensor3GL mstar_right_iterate(const GLElt& x);  // (id (x) m*) m*

GLElt gl_contragredient(const Context& ctx, const GLElt& x);
Multisegment ms_contragredient(const Context& ctx, const Multisegment& m);

// M* = (m (x) id) o (~ (x) m*) o kappa o m*, evaluated literally.
TensorGL Mstar(const Context& ctx, const GLElt& x);

struct ClosedExpansion {
  TensorGL value;
  std::size_t raw_terms = 0;  // summands of the double sum before collecting
};

// Double-sum formula for M*(delta([a,c])), inner index t = s..c.
ClosedExpansion Mstar_segment_closed(const Context& ctx, const Segment& s);

// M*_GL(pi) = sum x x y~ over m*(pi) = sum x (x) y.
GLElt MstarGL(const Context& ctx, const GLElt& x);

// D: s(D) -> s(D) + s(D^-), extended multiplicatively. Zeta basis only.
GLElt derivative(const GLElt& x);
// Lowest nonzero graded part of D(x). Zeta basis, x != 0.
GLElt highest_derivative(const GLElt& x);
// Key-level rule (D1,...,Dk) -> (D1^-,...,Dk^-), empties dropped.
Multisegment ms_minus(const Multisegment& m);

// Zelevinsky involution on multisegments (Moeglin-Waldspurger algorithm).
// Single-line input only.
Multisegment mw_dual(const Multisegment& m);
// Splits by line, dualizes each part, merges.
Multisegment mw_dual_multiline(const Multisegment& m);

// Multisegment restricted to the given line.
Multisegment restrict_to_line(const Multisegment& m, const LineId& line);

}  // namespace cuspline
