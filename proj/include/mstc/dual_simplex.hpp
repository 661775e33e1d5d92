#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mstc::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (structural column, coefficient)
  Sense sense = Sense::kLessEqual;
  double rhs = 0;
};

enum class Status { kOptimal, kInfeasible, kIterationLimit, kTimeLimit };

/// Bounded-variable dual simplex on a dense tableau.
///
/// Every structural column must have finite bounds, so the all-slack basis
/// with each structural at its cost-favourable bound is dual feasible from
/// the start. Rows may be appended at any time; the next solve() warm
/// starts from the current basis, which is what cutting-plane loops need.
class DualSimplex {
 public:
  DualSimplex(std::vector<double> cost, std::vector<double> lower, std::vector<double> upper);

  int add_row(const Row& row);
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_structurals() const { return num_struct_; }

  Status solve(std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt,
               long max_iterations = 1'000'000);

  double objective() const;
  std::vector<double> primal() const;         // structural values
  std::vector<double> reduced_costs() const;  // structural reduced costs
  long iterations() const { return iterations_; }

 private:
  enum class At : unsigned char { kBasic, kLower, kUpper, kZero };

  int num_cols() const { return static_cast<int>(cost_.size()); }
  void pivot(int r, int q);
  void refactor();
  void recompute_values();
  bool flip_dual_infeasible();

  int num_struct_;
  std::vector<double> cost_, lower_, upper_;
  std::vector<Row> rows_;
  std::vector<std::vector<double>> tableau_;  // B^-1 [A | I]
  std::vector<double> beta_;                  // B^-1 b
  std::vector<double> d_;                     // reduced costs, every column
  std::vector<int> head_;                     // basic column of each row
  std::vector<At> state_;
  std::vector<double> value_;
  long iterations_ = 0;
  long since_refactor_ = 0;
};

}  // namespace mstc::lp
