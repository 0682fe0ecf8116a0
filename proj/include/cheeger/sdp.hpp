#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cheeger::sdp {

/// One stored entry of a sparse symmetric matrix: value sits at (row, col) and (col, row).
struct Entry {
  int row;
  int col;
  double value;
};

/// Row i of the equality system <A_i, X> + sum_l a_il s_l = b_i.
struct Constraint {
  std::vector<Entry> entries;
  std::vector<std::pair<int, double>> slack_terms;
  double rhs = 0.0;
};

/// min <C, X> + c_s^T s  s.t.  A(X) + A_s(s) = b,  X psd,  s >= 0.
///
/// Inequalities are expressed through the nonnegative scalar variables s. For
/// the certified bound each slack needs an upper bound and tr(X) needs a bound.
class Problem {
public:
  explicit Problem(int dim) : dim_(dim), objective_(Eigen::MatrixXd::Zero(dim, dim)) {}

  int dim() const { return dim_; }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  int num_slacks() const { return static_cast<int>(slack_cost_.size()); }

  Eigen::MatrixXd& objective() { return objective_; }
  const Eigen::MatrixXd& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<double>& slack_cost() const { return slack_cost_; }
  const std::vector<double>& slack_upper() const { return slack_upper_; }

  void set_trace_bound(double bound) { trace_bound_ = bound; }
  std::optional<double> trace_bound() const { return trace_bound_; }

  void add_equality(std::vector<Entry> entries, double rhs);
  /// <G, X> <= rhs via a fresh slack bounded above by slack_bound.
  void add_less_equal(std::vector<Entry> entries, double rhs, double slack_bound);
  /// <G, X> >= rhs via a fresh slack bounded above by slack_bound.
  void add_greater_equal(std::vector<Entry> entries, double rhs, double slack_bound);

  /// <A_i, X> for a symmetric X.
  static double apply(const std::vector<Entry>& entries, const Eigen::MatrixXd& x);

  /// Plain-text dump: header "dim m slacks", then "c i j v" objective triplets
  /// and "a row i j v" / "s row slack v" / "b row v" constraint lines (0-based).
  void write_triplets(std::ostream& out) const;

private:
  int add_slack(double cost, double upper);

  int dim_;
  Eigen::MatrixXd objective_;
  std::vector<Constraint> rows_;
  std::vector<double> slack_cost_;
  std::vector<double> slack_upper_;
  std::optional<double> trace_bound_;
};

enum class Status { kOptimal, kMaxIterations, kNumericalFailure };

std::string to_string(Status status);

struct Solution {
  Status status = Status::kNumericalFailure;
  Eigen::MatrixXd x;
  Eigen::VectorXd slacks;
  Eigen::VectorXd y;
  Eigen::MatrixXd z;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  /// Lower bound on the true optimum that survives dual infeasibility of y:
  /// b^T y + tr_bound * min(0, lambda_min(C - A^T y)) + slack corrections.
  /// Equals dual_objective when no trace bound is known.
  double certified_lower_bound = 0.0;
};

struct Settings {
  double gap_tolerance = 1e-7;
  double feasibility_tolerance = 1e-8;
  int max_iterations = 100;
  double step_fraction = 0.98;
};

/// Primal-dual path following with the HKM search direction and a Mehrotra
/// predictor-corrector step. Dense; intended for blocks up to a few hundred.
Solution solve(const Problem& problem, const Settings& settings = {});

/// Certified lower bound for the minimisation problem from any multiplier vector y.
double certified_bound(const Problem& problem, const Eigen::VectorXd& y);

} // namespace cheeger::sdp
