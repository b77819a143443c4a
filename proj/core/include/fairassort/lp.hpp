#pragma once

#include <limits>
#include <vector>

namespace fairassort {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

/// Dense linear program: maximize objective . x subject to the rows and
/// variable bounds. Intended scale is a few hundred variables / constraints.
struct LinearProgram {
  enum class Rel { Le, Eq, Ge };
  struct Row {
    std::vector<double> coeffs;
    Rel rel;
    double rhs;
  };

  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Row> rows;
  std::vector<double> lower;  // defaults to 0 when empty
  std::vector<double> upper;  // defaults to +inf when empty

  void add_row(std::vector<double> coeffs, Rel rel, double rhs) {
    rows.push_back({std::move(coeffs), rel, rhs});
  }
};

struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> x;
  double objective = 0.0;
};

/// Two-phase dense simplex (Dantzig pricing with a Bland fallback for
/// anti-cycling). Holds scratch buffers: run one solve at a time per
/// instance; distinct instances are independent.
class LpSolver {
 public:
  LpSolution solve(const LinearProgram& lp);

  /// Infeasibility is declared when the phase-1 optimum exceeds this.
  static constexpr double kFeasEps = 1e-8;

 private:
  std::vector<double> tab_;   // (m+1) x (cols+1) row-major tableau
  std::vector<int> basis_;
  int m_ = 0, cols_ = 0;

  double& at(int r, int c) { return tab_[static_cast<std::size_t>(r * (cols_ + 1) + c)]; }
  void pivot(int row, int col);
  // Returns true on optimal, false on unbounded; -1 iteration budget -> throw.
  bool run_simplex(const std::vector<double>& costs, int allowed_cols, long* iter_budget);
};

}  // namespace fairassort
