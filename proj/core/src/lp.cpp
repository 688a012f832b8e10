#include "offtarget/lp.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "offtarget/errors.hpp"

namespace offtarget {
namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr int kDegenerateRunBeforeBland = 50;
constexpr double kFeasibilitySlack = 1e-9;
constexpr double kRelativeGap = 1e-6;

template <class Scalar>
struct Tolerance {
  static Scalar eps() { return Scalar(1e-12); }
};
template <>
struct Tolerance<Rational> {
  static Rational eps() { return Rational(0); }
};

template <class Scalar>
double to_double(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return s;
  } else {
    return s.template convert_to<double>();
  }
}

template <class Scalar>
struct DualResult {
  std::vector<Scalar> x;  // primal, one per row
  std::vector<Scalar> y;  // dual, one per column
};

// max 1.y s.t. A y <= w, y >= 0, where A is rows x cols (rows = actions).
template <class Scalar>
DualResult<Scalar> dual_simplex_tableau(std::size_t rows, std::size_t cols,
                                        const std::vector<Scalar>& a,
                                        const std::vector<Scalar>& w) {
  const std::size_t width = cols + rows + 1;  // y, slacks, rhs
  const std::size_t rhs = width - 1;
  std::vector<Scalar> t((rows + 1) * width, Scalar(0));
  auto cell = [&](std::size_t r, std::size_t c) -> Scalar& { return t[r * width + c]; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) cell(r, c) = a[r * cols + c];
    cell(r, cols + r) = Scalar(1);
    cell(r, rhs) = w[r];
  }
  for (std::size_t c = 0; c < cols; ++c) cell(rows, c) = Scalar(-1);

  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = cols + r;

  const Scalar eps = Tolerance<Scalar>::eps();
  int degenerate_run = 0;
  bool bland = false;
  const std::size_t max_pivots = 200 * (rows + cols) + 10000;
  for (std::size_t pivots = 0;; ++pivots) {
    if (pivots > max_pivots) throw InvariantViolation("simplex exceeded its pivot budget");
    std::size_t enter = width;
    for (std::size_t c = 0; c < rhs; ++c) {
      if (!(cell(rows, c) < -eps)) continue;
      if (bland) {
        enter = c;
        break;
      }
      if (enter == width || cell(rows, c) < cell(rows, enter)) enter = c;
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Scalar best_ratio(0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!(cell(r, enter) > eps)) continue;
      Scalar ratio = cell(r, rhs) / cell(r, enter);
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) throw InvariantViolation("dual of a covering LP reported unbounded");

    if (!(best_ratio > eps)) {
      if (++degenerate_run >= kDegenerateRunBeforeBland) bland = true;
    } else {
      degenerate_run = 0;
    }

    const Scalar piv = cell(leave, enter);
    for (std::size_t c = 0; c < width; ++c) cell(leave, c) /= piv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const Scalar f = cell(r, enter);
      if (f == Scalar(0)) continue;
      for (std::size_t c = 0; c < width; ++c) cell(r, c) -= f * cell(leave, c);
    }
    basis[leave] = enter;
  }

  DualResult<Scalar> out;
  out.y.assign(cols, Scalar(0));
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < cols) out.y[basis[r]] = cell(r, rhs);
  }
  out.x.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) out.x[r] = cell(rows, cols + r);
  return out;
}

template <class Scalar>
LpSolution solve_as(std::size_t k, std::size_t m, std::span<const double> a,
                    std::span<const double> weights, const std::vector<std::size_t>& active) {
  const std::size_t rows = active.size();
  std::vector<Scalar> ra(rows * m);
  std::vector<Scalar> rw(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    rw[r] = Scalar(weights[active[r]]);
    for (std::size_t j = 0; j < m; ++j) ra[r * m + j] = Scalar(a[active[r] * m + j]);
  }
  DualResult<Scalar> res = dual_simplex_tableau<Scalar>(rows, m, ra, rw);

  LpSolution sol;
  sol.x.assign(k, 0.0);
  Scalar primal(0);
  Scalar dual(0);
  for (std::size_t r = 0; r < rows; ++r) {
    Scalar xr = res.x[r] < Scalar(0) ? Scalar(0) : res.x[r];
    sol.x[active[r]] = to_double(xr);
    primal += rw[r] * xr;
  }
  sol.y.reserve(m);
  for (const Scalar& y : res.y) {
    dual += y;
    sol.y.push_back(to_double(y));
  }
  sol.objective = to_double(primal);
  sol.dual_objective = to_double(dual);
  sol.exact = std::is_same_v<Scalar, Rational>;
  return sol;
}

double min_coverage(std::size_t k, std::size_t m, std::span<const double> a,
                    const std::vector<double>& x) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    double cov = 0.0;
    for (std::size_t i = 0; i < k; ++i) cov += a[i * m + j] * x[i];
    worst = std::min(worst, cov);
  }
  return worst;
}

bool certify(std::size_t k, std::size_t m, std::span<const double> a,
             std::span<const double> weights, const LpSolution& s) {
  if (m > 0 && min_coverage(k, m, a, s.x) < 1.0 - kFeasibilitySlack) return false;
  for (double y : s.y) {
    if (y < -kFeasibilitySlack) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    double load = 0.0;
    for (std::size_t j = 0; j < m; ++j) load += a[i * m + j] * s.y[j];
    if (load > weights[i] + kFeasibilitySlack * std::max(1.0, weights[i])) return false;
  }
  const double scale = std::max(1.0, std::abs(s.objective));
  return std::abs(s.objective - s.dual_objective) <= kRelativeGap * scale;
}

}  // namespace

LpSolution solve_covering_lp(std::size_t k, std::size_t m, std::span<const double> a,
                             std::span<const double> weights, LpOptions options) {
  if (a.size() != k * m) throw ContractViolation("coefficient matrix has the wrong size");
  if (weights.size() != k) throw ContractViolation("one weight per action required");
  for (std::size_t j = 0; j < m; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < k && !any; ++i) any = a[i * m + j] > 0.0;
    if (!any) throw ContractViolation("column " + std::to_string(j) + " cannot be covered");
  }
  LpSolution sol;
  if (m == 0) {
    sol.x.assign(k, 0.0);
    sol.exact = true;
    sol.certified = true;
    return sol;
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < k; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < m && !any; ++j) any = a[i * m + j] > 0.0;
    if (any) active.push_back(i);
  }
  const bool small = active.size() <= kExactLimit && m <= kExactLimit;
  if (options.exact) {
    if (!small) throw ContractViolation("exact LP solving is limited to 64 x 64 instances");
    sol = solve_as<Rational>(k, m, a, weights, active);
    sol.certified = true;
    return sol;
  }

  sol = solve_as<double>(k, m, a, weights, active);
  if (certify(k, m, a, weights, sol)) {
    sol.certified = true;
    return sol;
  }
  if (small) {
    sol = solve_as<Rational>(k, m, a, weights, active);
    sol.certified = true;
    return sol;
  }
  const double cov = min_coverage(k, m, a, sol.x);
  if (cov > 0.0 && cov < 1.0) {
    for (double& xi : sol.x) xi /= cov;
    double obj = 0.0;
    for (std::size_t i = 0; i < k; ++i) obj += weights[i] * sol.x[i];
    sol.objective = obj;
  }
  return sol;
}

LpSolution solve_vlp(const CutProbabilityTable& table, std::span<const double> weights,
                     LpOptions options) {
  for (std::size_t j = 0; j < table.num_targets(); ++j) {
    if (!(table.column_total(j) > 0.0)) {
      throw UnreachableEdge(table.targets()[j].u, table.targets()[j].v);
    }
  }
  std::vector<double> a(table.num_actions() * table.num_targets());
  for (std::size_t i = 0; i < table.num_actions(); ++i) {
    auto row = table.row(i);
    std::copy(row.begin(), row.end(), a.begin() + static_cast<std::ptrdiff_t>(i * table.num_targets()));
  }
  return solve_covering_lp(table.num_actions(), table.num_targets(), a, weights, options);
}

}  // namespace offtarget
