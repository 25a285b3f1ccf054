#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace amenlab {

// Dense two-phase simplex for  min c.x  s.t.  A x = b, x >= 0,  with Bland's
// rule throughout (deterministic, no cycling).  Scalar may be double or an
// exact rational type; exact types pivot on literal zero tests.
template <class Scalar>
struct LPResult {
  bool optimal = false;
  bool unbounded = false;
  Scalar objective{};
  std::vector<Scalar> x;
  int iterations = 0;
};

template <class Scalar>
class SimplexSolver {
public:
  SimplexSolver(std::vector<std::vector<Scalar>> A, std::vector<Scalar> b,
                std::vector<Scalar> c)
      : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)) {
    m_ = (int)A_.size();
    n_ = m_ ? (int)A_[0].size() : 0;
    if ((int)b_.size() != m_ || (int)c_.size() != n_)
      throw std::invalid_argument("inconsistent LP dimensions");
  }

  LPResult<Scalar> solve(int max_iters = 2000000) {
    for (int i = 0; i < m_; ++i)
      if (b_[i] < Scalar(0)) {
        for (auto& v : A_[i]) v = -v;
        b_[i] = -b_[i];
      }
    // tableau with artificial columns n_..n_+m_-1
    cols_ = n_ + m_;
    T_.assign(m_, std::vector<Scalar>(cols_ + 1, Scalar(0)));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) T_[i][j] = A_[i][j];
      T_[i][n_ + i] = Scalar(1);
      T_[i][cols_] = b_[i];
      basis_[i] = n_ + i;
    }

    LPResult<Scalar> res;
    // phase 1: minimize sum of artificials
    std::vector<Scalar> obj(cols_, Scalar(0));
    for (int j = n_; j < cols_; ++j) obj[j] = Scalar(1);
    int it1 = run(obj, cols_, max_iters, res);
    if (it1 < 0 || res.unbounded) return res;
    Scalar phase1 = objective_value(obj);
    if (!is_zero(phase1)) return res;  // infeasible
    drive_out_artificials();

    // phase 2 over the original columns only
    std::vector<Scalar> obj2(cols_, Scalar(0));
    for (int j = 0; j < n_; ++j) obj2[j] = c_[j];
    int it2 = run(obj2, n_, max_iters, res);
    if (it2 < 0 || res.unbounded) return res;

    res.optimal = true;
    res.objective = objective_value(obj2);
    res.x.assign(n_, Scalar(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = T_[i][cols_];
    res.iterations = it1 + it2;
    return res;
  }

private:
  static Scalar tol() {
    if constexpr (std::numeric_limits<Scalar>::is_exact)
      return Scalar(0);
    else
      return Scalar(1e-9);
  }
  static bool is_zero(const Scalar& v) { return v <= tol() && v >= -tol(); }

  Scalar reduced_cost(const std::vector<Scalar>& obj, int j) const {
    Scalar r = obj[j];
    for (int i = 0; i < m_; ++i)
      if (!is_zero(T_[i][j])) r -= obj[basis_[i]] * T_[i][j];
    return r;
  }

  Scalar objective_value(const std::vector<Scalar>& obj) const {
    Scalar v(0);
    for (int i = 0; i < m_; ++i) v += obj[basis_[i]] * T_[i][cols_];
    return v;
  }

  void pivot(int row, int col) {
    Scalar p = T_[row][col];
    for (int j = 0; j <= cols_; ++j) T_[row][j] = T_[row][j] / p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      Scalar f = T_[i][col];
      if (is_zero(f)) continue;
      for (int j = 0; j <= cols_; ++j) T_[i][j] -= f * T_[row][j];
    }
    basis_[row] = col;
  }

  // returns iterations used, -1 on iteration cap
  int run(const std::vector<Scalar>& obj, int usable_cols, int max_iters,
          LPResult<Scalar>& res) {
    for (int it = 0; it < max_iters; ++it) {
      // Bland: entering = lowest-index column with negative reduced cost
      int enter = -1;
      for (int j = 0; j < usable_cols; ++j) {
        if (in_basis(j)) continue;
        if (reduced_cost(obj, j) < -tol()) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return it;
      int leave = -1;
      Scalar best{};
      for (int i = 0; i < m_; ++i) {
        if (T_[i][enter] > tol()) {
          Scalar ratio = T_[i][cols_] / T_[i][enter];
          if (leave < 0 || ratio < best ||
              (ratio == best && basis_[i] < basis_[leave])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) {
        res.unbounded = true;
        return it;
      }
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration cap exceeded");
  }

  bool in_basis(int j) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == j) return true;
    return false;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j)
        if (!in_basis(j) && !is_zero(T_[i][j])) {
          col = j;
          break;
        }
      if (col >= 0) pivot(i, col);
      // otherwise the row is redundant; its artificial stays basic at zero
    }
  }

  std::vector<std::vector<Scalar>> A_;
  std::vector<Scalar> b_;
  std::vector<Scalar> c_;
  std::vector<std::vector<Scalar>> T_;
  std::vector<int> basis_;
  int m_ = 0, n_ = 0, cols_ = 0;
};

}  // namespace amenlab
