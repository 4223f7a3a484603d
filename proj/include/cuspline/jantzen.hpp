#pragma once

// Regular partitions of the cuspidal lines, filtered comultiplications and
// the Jantzen correspondence on Langlands data.

#include <map>
#include <set>

#include "cuspline/classical.hpp"

namespace cuspline {

struct LinePartition {
  std::set<LineId> part1;
  std::set<LineId> part2;

  // Disjoint parts covering the lines of the context.
  static LinePartition make(const Context& ctx, std::set<LineId> part1, std::set<LineId> part2);
  const std::set<LineId>& side(int s) const;
  const std::set<LineId>& other(int s) const;
};

// Projections keyed by the name of the part they live on.
using SplitDatum = std::map<std::string, LanglandsDatum>;

TensorClass mustar_filtered(const Context& ctx, const ClassElt& y, const LinePartition& p,
                            int side);
TensorGL Mstar_filtered(const Context& ctx, const GLElt& x, const LinePartition& p, int side);

// Psi: GL factors are merged exponentwise, tempered parts are combined.
LanglandsDatum psi_combine(const LanglandsDatum& x1, const LanglandsDatum& x2);
LanglandsDatum psi_combine(const SplitDatum& parts);

// X_side(d). Tempered parts must be single-line or split into single-line parts.
LanglandsDatum xi_project(const LanglandsDatum& d, const LinePartition& p, int side);
LanglandsDatum xi_project(const LanglandsDatum& d, const std::set<LineId>& lines);

// Psi on induced symbols over a cuspidal base: (b1 x| sigma, b2 x| sigma) -> (b1 x b2) x| sigma.
InducedSymbol psi_induced(const InducedSymbol& y1, const InducedSymbol& y2);
// Psi applied factorwise to the right-hand sides of a product of two tensors.
TensorClass psi_tensor(const TensorClass& t1, const TensorClass& t2);

// Relabels a datum supported on `from` to the line `to`. Both lines must
// reduce at the same alpha > 0.
LanglandsDatum transport_line(const Context& ctx, const LanglandsDatum& d, const LineId& from,
                              const LineId& to, const std::optional<std::string>& to_sigma = {});

}  // namespace cuspline
