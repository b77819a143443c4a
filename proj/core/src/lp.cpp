#include "fairassort/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairassort {

namespace {

constexpr double kEnterTol = 1e-9;
constexpr double kPivotTol = 1e-11;

struct VarMap {
  int pos_col;    // column of the nonnegative part
  int neg_col;    // column of the negated part (free variables), or -1
  double shift;   // finite lower bound folded into the column
};

}  // namespace

void LpSolver::pivot(int row, int col) {
  double piv = at(row, col);
  double inv = 1.0 / piv;
  for (int c = 0; c <= cols_; ++c) at(row, c) *= inv;
  at(row, col) = 1.0;
  for (int r = 0; r <= m_; ++r) {
    if (r == row) continue;
    double factor = at(r, col);
    if (factor == 0.0) continue;
    for (int c = 0; c <= cols_; ++c) at(r, c) -= factor * at(row, c);
    at(r, col) = 0.0;
  }
  basis_[static_cast<std::size_t>(row)] = col;
}

bool LpSolver::run_simplex(const std::vector<double>& /*costs*/, int allowed_cols,
                           long* iter_budget) {
  long bland_after = 2L * (m_ + cols_) + 100;
  long iters = 0;
  while (true) {
    if (--(*iter_budget) < 0) throw std::overflow_error("simplex iteration budget exhausted");
    bool bland = iters++ > bland_after;

    int enter = -1;
    if (bland) {
      for (int j = 0; j < allowed_cols; ++j) {
        if (at(m_, j) < -kEnterTol) { enter = j; break; }
      }
    } else {
      double best = -kEnterTol;
      for (int j = 0; j < allowed_cols; ++j) {
        if (at(m_, j) < best) { best = at(m_, j); enter = j; }
      }
    }
    if (enter < 0) return true;  // optimal

    // Two-pass ratio test: find the minimum ratio, then break ties toward
    // the largest pivot element (smallest basis index under Bland's rule).
    // Pivoting on near-zero elements blows the tableau up numerically.
    double min_ratio = -1.0;
    for (int r = 0; r < m_; ++r) {
      double a = at(r, enter);
      if (a <= kPivotTol) continue;
      double ratio = std::max(at(r, cols_), 0.0) / a;
      if (min_ratio < 0.0 || ratio < min_ratio) min_ratio = ratio;
    }
    if (min_ratio < 0.0) return false;  // unbounded along the entering column

    int leave = -1;
    double window = min_ratio + 1e-9 * (1.0 + min_ratio);
    for (int r = 0; r < m_; ++r) {
      double a = at(r, enter);
      if (a <= kPivotTol) continue;
      double ratio = std::max(at(r, cols_), 0.0) / a;
      if (ratio > window) continue;
      if (leave < 0) {
        leave = r;
        continue;
      }
      if (bland) {
        if (basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)]) leave = r;
      } else if (a > at(leave, enter)) {
        leave = r;
      }
    }
    pivot(leave, enter);
  }
}

LpSolution LpSolver::solve(const LinearProgram& lp) {
  const int n = lp.num_vars;
  if (n <= 0) throw std::invalid_argument("lp_solve: no variables");
  if (static_cast<int>(lp.objective.size()) != n)
    throw std::invalid_argument("lp_solve: objective size mismatch");
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != n)
      throw std::invalid_argument("lp_solve: row size mismatch");
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("lp_solve: non-finite rhs");
    for (double a : row.coeffs)
      if (!std::isfinite(a)) throw std::invalid_argument("lp_solve: non-finite coefficient");
  }
  if (!lp.lower.empty() && static_cast<int>(lp.lower.size()) != n)
    throw std::invalid_argument("lp_solve: lower bound size mismatch");
  if (!lp.upper.empty() && static_cast<int>(lp.upper.size()) != n)
    throw std::invalid_argument("lp_solve: upper bound size mismatch");

  auto lower_of = [&](int j) { return lp.lower.empty() ? 0.0 : lp.lower[static_cast<std::size_t>(j)]; };
  auto upper_of = [&](int j) { return lp.upper.empty() ? kLpInfinity : lp.upper[static_cast<std::size_t>(j)]; };

  // Shift finite lower bounds to zero; split free variables into a difference
  // of two nonnegative columns. Finite upper bounds become extra rows.
  std::vector<VarMap> vmap(static_cast<std::size_t>(n));
  int struct_cols = 0;
  for (int j = 0; j < n; ++j) {
    double lo = lower_of(j);
    if (std::isfinite(lo)) {
      vmap[static_cast<std::size_t>(j)] = {struct_cols++, -1, lo};
    } else {
      vmap[static_cast<std::size_t>(j)] = {struct_cols, struct_cols + 1, 0.0};
      struct_cols += 2;
    }
  }

  struct NormRow {
    std::vector<double> a;
    LinearProgram::Rel rel;
    double rhs;
  };
  std::vector<NormRow> norm;
  norm.reserve(lp.rows.size() + static_cast<std::size_t>(n));
  auto transform_row = [&](const std::vector<double>& coeffs, LinearProgram::Rel rel, double rhs) {
    NormRow out;
    out.a.assign(static_cast<std::size_t>(struct_cols), 0.0);
    out.rel = rel;
    out.rhs = rhs;
    for (int j = 0; j < n; ++j) {
      double aij = coeffs[static_cast<std::size_t>(j)];
      if (aij == 0.0) continue;
      const VarMap& vm = vmap[static_cast<std::size_t>(j)];
      out.a[static_cast<std::size_t>(vm.pos_col)] += aij;
      if (vm.neg_col >= 0) out.a[static_cast<std::size_t>(vm.neg_col)] -= aij;
      out.rhs -= aij * vm.shift;
    }
    return out;
  };
  for (const auto& row : lp.rows) norm.push_back(transform_row(row.coeffs, row.rel, row.rhs));
  for (int j = 0; j < n; ++j) {
    double hi = upper_of(j);
    if (!std::isfinite(hi)) continue;
    std::vector<double> coeffs(static_cast<std::size_t>(n), 0.0);
    coeffs[static_cast<std::size_t>(j)] = 1.0;
    norm.push_back(transform_row(coeffs, LinearProgram::Rel::Le, hi));
  }

  m_ = static_cast<int>(norm.size());
  // Column layout: structural | slack/surplus | artificial | rhs.
  int slack_count = 0;
  for (auto& row : norm) {
    if (row.rhs < 0) {
      for (auto& a : row.a) a = -a;
      row.rhs = -row.rhs;
      if (row.rel == LinearProgram::Rel::Le) row.rel = LinearProgram::Rel::Ge;
      else if (row.rel == LinearProgram::Rel::Ge) row.rel = LinearProgram::Rel::Le;
    }
    if (row.rel != LinearProgram::Rel::Eq) ++slack_count;
  }
  int art_count = 0;
  for (const auto& row : norm)
    if (row.rel != LinearProgram::Rel::Le) ++art_count;

  int slack_start = struct_cols;
  int art_start = slack_start + slack_count;
  cols_ = art_start + art_count;

  tab_.assign(static_cast<std::size_t>((m_ + 1) * (cols_ + 1)), 0.0);
  basis_.assign(static_cast<std::size_t>(m_), -1);

  int next_slack = slack_start, next_art = art_start;
  for (int r = 0; r < m_; ++r) {
    const auto& row = norm[static_cast<std::size_t>(r)];
    for (int c = 0; c < struct_cols; ++c) at(r, c) = row.a[static_cast<std::size_t>(c)];
    at(r, cols_) = row.rhs;
    switch (row.rel) {
      case LinearProgram::Rel::Le:
        at(r, next_slack) = 1.0;
        basis_[static_cast<std::size_t>(r)] = next_slack++;
        break;
      case LinearProgram::Rel::Ge:
        at(r, next_slack++) = -1.0;
        at(r, next_art) = 1.0;
        basis_[static_cast<std::size_t>(r)] = next_art++;
        break;
      case LinearProgram::Rel::Eq:
        at(r, next_art) = 1.0;
        basis_[static_cast<std::size_t>(r)] = next_art++;
        break;
    }
  }

  long iter_budget = 20000 + 200L * (m_ + cols_);
  LpSolution sol;

  try {
    // Phase 1: minimize the sum of artificials (cost 1 on each artificial,
    // priced out against the artificial basis rows).
    if (art_count > 0) {
      for (int c = 0; c <= cols_; ++c) at(m_, c) = 0.0;
      for (int c = art_start; c < cols_; ++c) at(m_, c) = 1.0;
      for (int r = 0; r < m_; ++r) {
        if (basis_[static_cast<std::size_t>(r)] >= art_start) {
          for (int c = 0; c <= cols_; ++c) at(m_, c) -= at(r, c);
        }
      }
      bool optimal = run_simplex({}, art_start, &iter_budget);
      double phase1 = -at(m_, cols_);
      if (!optimal || phase1 > kFeasEps) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
      // Drive zero-level artificials out of the basis where possible; rows
      // with no structural/slack entry are redundant and stay inert.
      for (int r = 0; r < m_; ++r) {
        if (basis_[static_cast<std::size_t>(r)] < art_start) continue;
        for (int c = 0; c < art_start; ++c) {
          if (std::abs(at(r, c)) > 1e-9) {
            pivot(r, c);
            break;
          }
        }
      }
    }

    // Phase 2: minimize -objective in the transformed variables.
    for (int c = 0; c <= cols_; ++c) at(m_, c) = 0.0;
    std::vector<double> cost(static_cast<std::size_t>(cols_), 0.0);
    for (int j = 0; j < n; ++j) {
      const VarMap& vm = vmap[static_cast<std::size_t>(j)];
      double cj = -lp.objective[static_cast<std::size_t>(j)];
      cost[static_cast<std::size_t>(vm.pos_col)] += cj;
      if (vm.neg_col >= 0) cost[static_cast<std::size_t>(vm.neg_col)] -= cj;
    }
    for (int c = 0; c < cols_; ++c) at(m_, c) = cost[static_cast<std::size_t>(c)];
    for (int r = 0; r < m_; ++r) {
      int b = basis_[static_cast<std::size_t>(r)];
      double cb = cost[static_cast<std::size_t>(b)];
      if (cb == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(m_, c) -= cb * at(r, c);
    }
    bool optimal = run_simplex({}, art_start, &iter_budget);
    if (!optimal) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
  } catch (const std::overflow_error&) {
    sol.status = LpStatus::NumericalFailure;
    return sol;
  }

  std::vector<double> y(static_cast<std::size_t>(cols_), 0.0);
  for (int r = 0; r < m_; ++r) {
    y[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] =
        std::max(at(r, cols_), 0.0);
  }
  sol.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[static_cast<std::size_t>(j)];
    double value = y[static_cast<std::size_t>(vm.pos_col)];
    if (vm.neg_col >= 0) value -= y[static_cast<std::size_t>(vm.neg_col)];
    sol.x[static_cast<std::size_t>(j)] = value + vm.shift;
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j)
    sol.objective += lp.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace fairassort
