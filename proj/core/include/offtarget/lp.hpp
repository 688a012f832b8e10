#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "offtarget/intervention.hpp"

namespace offtarget {

struct LpOptions {
  /// Solve in exact rational arithmetic from the start (only allowed when
  /// both dimensions are at most kExactLimit).
  bool exact = false;
};

inline constexpr std::size_t kExactLimit = 64;

struct LpSolution {
  std::vector<double> x;        // one entry per action, >= 0
  std::vector<double> y;        // dual packing solution, one entry per target
  double objective = 0.0;       // sum_i w_i x_i
  double dual_objective = 0.0;  // value of the dual packing solution
  bool exact = false;           // produced by the rational solver
  bool certified = false;       // feasibility and duality gap checks passed
};

/// min w.x  s.t.  sum_i a(i, j) x_i >= 1 for every column j,  x >= 0,
/// with `a` a k x m row-major matrix of entries in [0,1].
///
/// Solved through its dual (max 1.y s.t. a y <= w, y >= 0) with a dense
/// tableau simplex, Dantzig pricing and Bland's rule after a run of
/// degenerate pivots. The double result is re-checked (coverage >= 1 - 1e-9,
/// relative duality gap <= 1e-6); if that fails and k, m <= kExactLimit the
/// problem is re-solved over the rationals. Otherwise x is rescaled to be
/// feasible and `certified` stays false.
///
/// ContractViolation if some column is all zero.
LpSolution solve_covering_lp(std::size_t k, std::size_t m, std::span<const double> a,
                             std::span<const double> weights, LpOptions options = {});

/// The covering LP over a cut-probability table. UnreachableEdge names the
/// first target no action can cut.
LpSolution solve_vlp(const CutProbabilityTable& table, std::span<const double> weights,
                     LpOptions options = {});

}  // namespace offtarget
