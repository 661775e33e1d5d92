#include "mstc/dual_simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mstc::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr long kRefactorInterval = 100;
constexpr long kStallLimit = 50;

}  // namespace

DualSimplex::DualSimplex(std::vector<double> cost, std::vector<double> lower, std::vector<double> upper)
    : num_struct_(static_cast<int>(cost.size())), cost_(std::move(cost)), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != cost_.size() || upper_.size() != cost_.size()) {
    throw std::invalid_argument("DualSimplex: bound vectors must match the cost vector");
  }
  d_ = cost_;
  state_.resize(cost_.size());
  value_.resize(cost_.size());
  for (std::size_t j = 0; j < cost_.size(); ++j) {
    if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j]) || lower_[j] > upper_[j]) {
      throw std::invalid_argument("DualSimplex: structural bounds must be finite and ordered");
    }
    state_[j] = cost_[j] >= 0 ? At::kLower : At::kUpper;
    value_[j] = cost_[j] >= 0 ? lower_[j] : upper_[j];
  }
}

int DualSimplex::add_row(const Row& row) {
  const int slack = num_cols();
  cost_.push_back(0);
  d_.push_back(0);
  switch (row.sense) {
    case Sense::kLessEqual:
      lower_.push_back(0);
      upper_.push_back(kInf);
      break;
    case Sense::kGreaterEqual:
      lower_.push_back(-kInf);
      upper_.push_back(0);
      break;
    case Sense::kEqual:
      lower_.push_back(0);
      upper_.push_back(0);
      break;
  }
  state_.push_back(At::kBasic);
  value_.push_back(0);
  for (auto& t : tableau_) t.push_back(0);

  std::vector<double> dense(static_cast<std::size_t>(num_cols()), 0.0);
  for (auto [j, a] : row.coeffs) {
    if (j < 0 || j >= num_struct_) throw std::invalid_argument("DualSimplex: row references an unknown column");
    dense[static_cast<std::size_t>(j)] += a;
  }
  dense[static_cast<std::size_t>(slack)] = 1;
  double rhs = row.rhs;
  for (std::size_t r = 0; r < tableau_.size(); ++r) {
    const double f = dense[static_cast<std::size_t>(head_[r])];
    if (f == 0) continue;
    const auto& t = tableau_[r];
    for (std::size_t j = 0; j < dense.size(); ++j) {
      if (t[j] != 0) dense[j] -= f * t[j];
    }
    dense[static_cast<std::size_t>(head_[r])] = 0;
    rhs -= f * beta_[r];
  }
  double v = rhs;
  for (std::size_t j = 0; j < dense.size(); ++j) {
    if (state_[j] != At::kBasic && dense[j] != 0 && value_[j] != 0) v -= dense[j] * value_[j];
  }
  value_[static_cast<std::size_t>(slack)] = v;
  rows_.push_back(row);
  tableau_.push_back(std::move(dense));
  beta_.push_back(rhs);
  head_.push_back(slack);
  return static_cast<int>(rows_.size()) - 1;
}

void DualSimplex::pivot(int r, int q) {
  auto& prow = tableau_[static_cast<std::size_t>(r)];
  const double piv = prow[static_cast<std::size_t>(q)];
  std::vector<int> nz;
  for (std::size_t j = 0; j < prow.size(); ++j) {
    if (prow[j] != 0) {
      prow[j] /= piv;
      nz.push_back(static_cast<int>(j));
    }
  }
  prow[static_cast<std::size_t>(q)] = 1;
  beta_[static_cast<std::size_t>(r)] /= piv;
  for (std::size_t i = 0; i < tableau_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    auto& t = tableau_[i];
    const double f = t[static_cast<std::size_t>(q)];
    if (f == 0) continue;
    for (int j : nz) t[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    t[static_cast<std::size_t>(q)] = 0;
    beta_[i] -= f * beta_[static_cast<std::size_t>(r)];
  }
  const double f = d_[static_cast<std::size_t>(q)];
  if (f != 0) {
    for (int j : nz) d_[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
  }
  d_[static_cast<std::size_t>(q)] = 0;
  head_[static_cast<std::size_t>(r)] = q;
}

void DualSimplex::refactor() {
  const std::size_t rows = rows_.size();
  const std::size_t cols = static_cast<std::size_t>(num_cols());
  std::vector<int> basis = head_;
  for (std::size_t r = 0; r < rows; ++r) {
    auto& t = tableau_[r];
    std::fill(t.begin(), t.end(), 0.0);
    for (auto [j, a] : rows_[r].coeffs) t[static_cast<std::size_t>(j)] += a;
    t[static_cast<std::size_t>(num_struct_) + r] = 1;
    beta_[r] = rows_[r].rhs;
    head_[r] = num_struct_ + static_cast<int>(r);
  }
  // Gauss-Jordan onto the saved basis with partial pivoting over unassigned rows.
  std::vector<char> assigned(rows, 0);
  for (int c : basis) {
    int best = -1;
    double best_abs = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (assigned[r]) continue;
      const double a = std::fabs(tableau_[r][static_cast<std::size_t>(c)]);
      if (a > best_abs) {
        best_abs = a;
        best = static_cast<int>(r);
      }
    }
    if (best < 0 || best_abs < 1e-12) throw std::runtime_error("DualSimplex: basis became singular");
    assigned[static_cast<std::size_t>(best)] = 1;
    pivot(best, c);
  }
  d_ = cost_;
  for (std::size_t r = 0; r < rows; ++r) {
    const double cb = cost_[static_cast<std::size_t>(head_[r])];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) d_[j] -= cb * tableau_[r][j];
  }
  for (std::size_t r = 0; r < rows; ++r) d_[static_cast<std::size_t>(head_[r])] = 0;
  since_refactor_ = 0;
  recompute_values();
}

void DualSimplex::recompute_values() {
  std::vector<int> active;
  for (std::size_t j = 0; j < state_.size(); ++j) {
    switch (state_[j]) {
      case At::kLower: value_[j] = lower_[j]; break;
      case At::kUpper: value_[j] = upper_[j]; break;
      case At::kZero: value_[j] = 0; break;
      case At::kBasic: continue;
    }
    if (value_[j] != 0) active.push_back(static_cast<int>(j));
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    double v = beta_[r];
    for (int j : active) v -= tableau_[r][static_cast<std::size_t>(j)] * value_[static_cast<std::size_t>(j)];
    value_[static_cast<std::size_t>(head_[r])] = v;
  }
}

bool DualSimplex::flip_dual_infeasible() {
  bool flipped = false;
  for (std::size_t j = 0; j < state_.size(); ++j) {
    if (state_[j] == At::kLower && d_[j] < -kDualTol && std::isfinite(upper_[j])) {
      state_[j] = At::kUpper;
      flipped = true;
    } else if (state_[j] == At::kUpper && d_[j] > kDualTol && std::isfinite(lower_[j])) {
      state_[j] = At::kLower;
      flipped = true;
    }
  }
  if (flipped) recompute_values();
  return flipped;
}

Status DualSimplex::solve(std::optional<std::chrono::steady_clock::time_point> deadline, long max_iterations) {
  flip_dual_infeasible();
  bool bland = false;
  bool verified = false;
  long stall = 0;
  double last_obj = -kInf;
  long local_iterations = 0;
  while (true) {
    if (deadline && (local_iterations % 32) == 0 && std::chrono::steady_clock::now() > *deadline) {
      return Status::kTimeLimit;
    }
    if (local_iterations >= max_iterations) return Status::kIterationLimit;
    if (since_refactor_ >= kRefactorInterval) {
      refactor();
      flip_dual_infeasible();
    }

    // Leaving row: largest bound violation (lowest basic column under Bland).
    int r = -1;
    double worst = kPrimalTol;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const int c = head_[i];
      const double v = value_[static_cast<std::size_t>(c)];
      const double viol = std::max(lower_[static_cast<std::size_t>(c)] - v, v - upper_[static_cast<std::size_t>(c)]);
      if (viol <= kPrimalTol) continue;
      if (bland ? (r < 0 || c < head_[static_cast<std::size_t>(r)]) : viol > worst) {
        worst = viol;
        r = static_cast<int>(i);
      }
    }
    if (r < 0) {
      if (!verified && since_refactor_ > 0) {
        refactor();
        flip_dual_infeasible();
        verified = true;
        continue;
      }
      return Status::kOptimal;
    }
    verified = false;

    const int leaving = head_[static_cast<std::size_t>(r)];
    const double lv = value_[static_cast<std::size_t>(leaving)];
    const bool below = lv < lower_[static_cast<std::size_t>(leaving)];
    const double target = below ? lower_[static_cast<std::size_t>(leaving)] : upper_[static_cast<std::size_t>(leaving)];
    const auto& prow = tableau_[static_cast<std::size_t>(r)];

    int q = -1;
    double best_ratio = kInf;
    double best_abs = 0;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      const At s = state_[j];
      if (s == At::kBasic || lower_[j] == upper_[j]) continue;
      const double a = prow[j];
      if (std::fabs(a) <= kPivotTol) continue;
      bool eligible = false;
      double dj = 0;
      if (s == At::kLower) {
        eligible = below ? a < 0 : a > 0;
        dj = std::max(0.0, d_[j]);
      } else if (s == At::kUpper) {
        eligible = below ? a > 0 : a < 0;
        dj = std::max(0.0, -d_[j]);
      } else {
        eligible = true;
        dj = std::fabs(d_[j]);
      }
      if (!eligible) continue;
      const double ratio = dj / std::fabs(a);
      const bool better = bland ? ratio < best_ratio - 1e-12
                                : (ratio < best_ratio - 1e-12 ||
                                   (ratio <= best_ratio + 1e-12 && std::fabs(a) > best_abs));
      if (q < 0 || better) {
        q = static_cast<int>(j);
        best_ratio = ratio;
        best_abs = std::fabs(a);
      }
    }
    if (q < 0) {
      if (since_refactor_ > 0) {
        refactor();
        flip_dual_infeasible();
        continue;
      }
      return Status::kInfeasible;
    }

    const double alpha = prow[static_cast<std::size_t>(q)];
    const double delta = (lv - target) / alpha;
    value_[static_cast<std::size_t>(q)] += delta;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double f = tableau_[i][static_cast<std::size_t>(q)];
      if (f != 0) value_[static_cast<std::size_t>(head_[i])] -= f * delta;
    }
    value_[static_cast<std::size_t>(leaving)] = target;
    state_[static_cast<std::size_t>(leaving)] = below ? At::kLower : At::kUpper;
    pivot(r, q);
    state_[static_cast<std::size_t>(q)] = At::kBasic;
    ++iterations_;
    ++local_iterations;
    ++since_refactor_;

    const double obj = objective();
    if (obj > last_obj + 1e-12) {
      last_obj = obj;
      stall = 0;
      bland = false;
    } else if (++stall > kStallLimit) {
      bland = true;
    }
  }
}

double DualSimplex::objective() const {
  double z = 0;
  for (int j = 0; j < num_struct_; ++j) z += cost_[static_cast<std::size_t>(j)] * value_[static_cast<std::size_t>(j)];
  return z;
}

std::vector<double> DualSimplex::primal() const {
  return {value_.begin(), value_.begin() + num_struct_};
}

std::vector<double> DualSimplex::reduced_costs() const {
  std::vector<double> out(d_.begin(), d_.begin() + num_struct_);
  for (int j = 0; j < num_struct_; ++j) {
    if (state_[static_cast<std::size_t>(j)] == At::kBasic) out[static_cast<std::size_t>(j)] = 0;
  }
  return out;
}

}  // namespace mstc::lp
