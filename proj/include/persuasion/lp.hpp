#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace persuasion {

// Maximize objective . x  subject to  G x >= h,  A x = b,  x >= 0.
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> G;
  std::vector<double> h;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double value = 0.0;
};

// Thrown when the pivot cap is hit. The caller gets an exception rather
// than a possibly wrong answer.
struct SolverStallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Dense tableau state shared by both simplex phases. Reduced costs are
// recomputed from the phase objective every iteration; problem sizes here
// are small enough that simplicity wins over an incremental update.
struct Tableau {
  std::vector<std::vector<double>> rows;  // updated constraint matrix
  std::vector<double> rhs;
  std::vector<int> basis;   // basis[i] = column basic in row i
  std::size_t num_cols = 0;
  long long pivots = 0;
  long long pivot_cap = 0;

  void pivot(std::size_t pr, std::size_t pc) {
    if (++pivots > pivot_cap)
      throw SolverStallError("simplex pivot cap exceeded");
    std::vector<double>& prow = rows[pr];
    const double inv = 1.0 / prow[pc];
    for (double& v : prow) v *= inv;
    rhs[pr] *= inv;
    prow[pc] = 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr) continue;
      const double factor = rows[i][pc];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < num_cols; ++j)
        rows[i][j] -= factor * prow[j];
      rows[i][pc] = 0.0;
      rhs[i] -= factor * rhs[pr];
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Runs simplex iterations maximizing obj over columns [0, active_cols).
  // Returns false if an unbounded ray was found. Bland's rule throughout:
  // entering column is the smallest index with positive reduced cost,
  // leaving row breaks ratio ties by smallest basic variable index.
  bool iterate(const std::vector<double>& obj, std::size_t active_cols) {
    for (;;) {
      int entering = -1;
      for (std::size_t j = 0; j < active_cols; ++j) {
        double reduced = obj[j];
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const double cb = obj[static_cast<std::size_t>(basis[i])];
          if (cb != 0.0) reduced -= cb * rows[i][j];
        }
        if (reduced > kPivotTol) {
          entering = static_cast<int>(j);
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double a = rows[i][static_cast<std::size_t>(entering)];
        if (a <= kPivotTol) continue;
        const double ratio = rhs[i] / a;
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio &&
             basis[i] < basis[static_cast<std::size_t>(leaving)])) {
          leaving = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(static_cast<std::size_t>(leaving),
            static_cast<std::size_t>(entering));
    }
  }
};

}  // namespace detail

inline LpSolution solve(const LpProblem& p) {
  const std::size_t nv = p.num_vars;
  if (p.objective.size() != nv)
    throw std::invalid_argument("objective length mismatch");
  if (p.G.size() != p.h.size() || p.A.size() != p.b.size())
    throw std::invalid_argument("constraint row count mismatch");
  for (const auto& row : p.G)
    if (row.size() != nv) throw std::invalid_argument("G row length mismatch");
  for (const auto& row : p.A)
    if (row.size() != nv) throw std::invalid_argument("A row length mismatch");

  const std::size_t n_ineq = p.G.size();
  const std::size_t n_rows = n_ineq + p.A.size();
  const std::size_t n_cols = nv + n_ineq + n_rows;  // surplus + artificial

  detail::Tableau t;
  t.num_cols = n_cols;
  t.pivot_cap = 10LL * static_cast<long long>(n_rows + n_cols) *
                static_cast<long long>(n_rows + n_cols);
  t.rows.assign(n_rows, std::vector<double>(n_cols, 0.0));
  t.rhs.assign(n_rows, 0.0);
  t.basis.assign(n_rows, 0);

  // Standard form: G x - s = h with s >= 0, then flip any row with a
  // negative right-hand side, then one artificial per row.
  for (std::size_t i = 0; i < n_rows; ++i) {
    const bool ineq = i < n_ineq;
    const std::vector<double>& src = ineq ? p.G[i] : p.A[i - n_ineq];
    double rhs = ineq ? p.h[i] : p.b[i - n_ineq];
    double sign = 1.0;
    if (rhs < 0.0) {
      sign = -1.0;
      rhs = -rhs;
    }
    for (std::size_t j = 0; j < nv; ++j) t.rows[i][j] = sign * src[j];
    if (ineq) t.rows[i][nv + i] = -sign;
    t.rows[i][nv + n_ineq + i] = 1.0;
    t.rhs[i] = rhs;
    t.basis[i] = static_cast<int>(nv + n_ineq + i);
  }

  // Phase 1: maximize minus the sum of artificials.
  std::vector<double> phase1(n_cols, 0.0);
  for (std::size_t i = 0; i < n_rows; ++i) phase1[nv + n_ineq + i] = -1.0;
  if (!t.iterate(phase1, n_cols))
    throw SolverStallError("phase 1 reported unbounded");
  double artificial_sum = 0.0;
  for (std::size_t i = 0; i < n_rows; ++i)
    if (t.basis[i] >= static_cast<int>(nv + n_ineq))
      artificial_sum += t.rhs[i];
  if (artificial_sum > detail::kFeasTol) {
    LpSolution sol;
    sol.status = LpStatus::infeasible;
    sol.value = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }

  // Drive leftover artificials out of the basis; a row with no usable
  // pivot column is redundant and gets dropped.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < static_cast<int>(nv + n_ineq)) {
      keep.push_back(i);
      continue;
    }
    std::size_t pc = nv + n_ineq;
    for (std::size_t j = 0; j < nv + n_ineq; ++j) {
      if (std::fabs(t.rows[i][j]) > detail::kPivotTol) {
        pc = j;
        break;
      }
    }
    if (pc < nv + n_ineq) {
      t.pivot(i, pc);
      keep.push_back(i);
    }
  }
  if (keep.size() < t.rows.size()) {
    std::vector<std::vector<double>> rows2;
    std::vector<double> rhs2;
    std::vector<int> basis2;
    for (std::size_t i : keep) {
      rows2.push_back(std::move(t.rows[i]));
      rhs2.push_back(t.rhs[i]);
      basis2.push_back(t.basis[i]);
    }
    t.rows = std::move(rows2);
    t.rhs = std::move(rhs2);
    t.basis = std::move(basis2);
  }

  // Phase 2 over structural and surplus columns only.
  std::vector<double> phase2(n_cols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) phase2[j] = p.objective[j];
  if (!t.iterate(phase2, nv + n_ineq)) {
    LpSolution sol;
    sol.status = LpStatus::unbounded;
    sol.value = std::numeric_limits<double>::infinity();
    return sol;
  }

  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < static_cast<int>(nv))
      sol.x[static_cast<std::size_t>(t.basis[i])] = t.rhs[i];
  sol.value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) sol.value += p.objective[j] * sol.x[j];
  return sol;
}

}  // namespace persuasion
