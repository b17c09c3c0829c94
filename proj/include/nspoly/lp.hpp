// Copyright 2026 The nspoly Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact rational linear programming.
//
// Two-phase revised simplex on the standard form min c·x, A·x = b, x >= 0,
// with an explicit exact basis inverse. A double-precision pass proposes a
// starting basis; the exact pass checks it and pivots to a certified optimum.
// Entering columns follow Dantzig's rule until pivots stall, then Bland's
// rule; ties on leaving go to the lowest basic index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nspoly/linalg.hpp"

namespace nspoly {

enum class Sense { Minimize, Maximize };

struct LinearProgram {
  std::size_t num_vars = 0;
  Sense sense = Sense::Minimize;
  RationalVector objective;   // empty means zero objective (pure feasibility)
  RationalMatrix eq;          // eq·x = eq_rhs
  RationalVector eq_rhs;
  RationalMatrix ineq;        // ineq·x >= ineq_rhs
  RationalVector ineq_rhs;
  std::vector<std::optional<Rational>> lower;  // per variable; nullopt = free. Empty means all >= 0.

  void validate() const {
    if (!objective.empty() && objective.size() != num_vars) throw std::invalid_argument("LinearProgram: objective length");
    if (eq.size() != eq_rhs.size() || ineq.size() != ineq_rhs.size())
      throw std::invalid_argument("LinearProgram: row count differs from rhs length");
    for (const auto& r : eq)
      if (r.size() != num_vars) throw std::invalid_argument("LinearProgram: equality row length");
    for (const auto& r : ineq)
      if (r.size() != num_vars) throw std::invalid_argument("LinearProgram: inequality row length");
    if (!lower.empty() && lower.size() != num_vars) throw std::invalid_argument("LinearProgram: lower bound count");
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

struct LpOptions {
  bool float_start = true;  // seed the exact solver with a floating-point basis
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Rational> value;
  std::optional<RationalVector> point;
  std::size_t pivots = 0;
};

namespace lp_detail {

struct SparseColumn {
  std::vector<std::pair<std::size_t, Rational>> entries;
};

// Double-precision revised simplex on the same standard form. It only
// proposes a basis; every verdict is re-derived exactly by StandardForm.
class FloatSimplex {
 public:
  FloatSimplex(const std::vector<SparseColumn>& cols, const RationalVector& b, const RationalVector& c)
      : m_(b.size()), n_(cols.size()), cols_(cols.size()), b_(b.size()), c_(c.size()) {
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& [r, v] : cols[j].entries) cols_[j].emplace_back(r, v.to_double());
    for (std::size_t i = 0; i < m_; ++i) b_[i] = b[i].to_double();
    for (std::size_t j = 0; j < n_; ++j) c_[j] = c[j].to_double();
  }

  // Final basis (columns n.. are artificials), or nothing on numerical failure.
  std::optional<std::vector<std::size_t>> solve() {
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
    if (!refactor()) return std::nullopt;
    std::vector<double> phase1(n_ + m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) phase1[n_ + i] = 1.0;
    if (run(phase1) == Result::Failed) return std::nullopt;
    double infeas = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) infeas += xb_[i];
    if (infeas > 1e-7) return basis_;
    drive_out();
    std::vector<double> phase2(n_ + m_, 0.0);
    std::copy(c_.begin(), c_.end(), phase2.begin());
    if (run(phase2) == Result::Failed) return std::nullopt;
    return basis_;
  }

 private:
  enum class Result { Optimal, Unbounded, Failed };
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-9;
  static constexpr std::size_t kRefactorEvery = 100;
  static constexpr std::size_t kStallLimit = 50;

  void column(std::size_t j, std::vector<double>& u) const {
    std::fill(u.begin(), u.end(), 0.0);
    if (j >= n_) {
      for (std::size_t i = 0; i < m_; ++i) u[i] = binv_[i * m_ + (j - n_)];
      return;
    }
    for (const auto& [r, v] : cols_[j])
      for (std::size_t i = 0; i < m_; ++i) u[i] += binv_[i * m_ + r] * v;
  }

  bool refactor() {
    // Gauss-Jordan with partial pivoting on [B | I].
    std::vector<double> a(m_ * m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t j = basis_[k];
      if (j >= n_) {
        a[(j - n_) * m_ + k] = 1.0;
      } else {
        for (const auto& [r, v] : cols_[j]) a[r * m_ + k] = v;
      }
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m_; ++i)
        if (std::abs(a[i * m_ + k]) > std::abs(a[p * m_ + k])) p = i;
      if (std::abs(a[p * m_ + k]) < 1e-11) return false;
      if (p != k) {
        for (std::size_t t = 0; t < m_; ++t) {
          std::swap(a[p * m_ + t], a[k * m_ + t]);
          std::swap(binv_[p * m_ + t], binv_[k * m_ + t]);
        }
      }
      const double inv = 1.0 / a[k * m_ + k];
      for (std::size_t t = 0; t < m_; ++t) {
        a[k * m_ + t] *= inv;
        binv_[k * m_ + t] *= inv;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == k) continue;
        const double f = a[i * m_ + k];
        if (f == 0.0) continue;
        for (std::size_t t = 0; t < m_; ++t) {
          a[i * m_ + t] -= f * a[k * m_ + t];
          binv_[i * m_ + t] -= f * binv_[k * m_ + t];
        }
      }
    }
    xb_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = 0;
      for (std::size_t r = 0; r < m_; ++r) s += binv_[i * m_ + r] * b_[r];
      xb_[i] = std::max(0.0, s);
    }
    since_refactor_ = 0;
    return true;
  }

  void pivot(std::size_t r, std::size_t enter, const std::vector<double>& u, double theta) {
    for (std::size_t i = 0; i < m_; ++i) xb_[i] = std::max(0.0, xb_[i] - theta * u[i]);
    xb_[r] = theta;
    const double inv = 1.0 / u[r];
    double* row = &binv_[r * m_];
    for (std::size_t t = 0; t < m_; ++t) row[t] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i] == 0.0) continue;
      double* other = &binv_[i * m_];
      const double f = u[i];
      for (std::size_t t = 0; t < m_; ++t) other[t] -= f * row[t];
    }
    basis_[r] = enter;
    ++since_refactor_;
  }

  Result run(const std::vector<double>& cost) {
    std::vector<bool> in_basis(n_ + m_, false);
    for (auto j : basis_) in_basis[j] = true;
    std::vector<double> y(m_), u(m_);
    std::size_t degenerate_run = 0;
    const std::size_t cap = 50 * (m_ + n_) + 10000;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      if (since_refactor_ >= kRefactorEvery && !refactor()) return Result::Failed;
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (std::size_t t = 0; t < m_; ++t) y[t] += cb * binv_[i * m_ + t];
      }
      const bool bland = degenerate_run >= kStallLimit;
      std::size_t enter = n_;
      double best = -kCostTol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis[j]) continue;
        double d = cost[j];
        for (const auto& [r, v] : cols_[j]) d -= y[r] * v;
        if (d < best) {
          enter = j;
          best = d;
          if (bland) break;
        }
      }
      if (enter == n_) return Result::Optimal;
      column(enter, u);
      // Harris two-pass ratio test.
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i)
        if (u[i] > kPivotTol) bound = std::min(bound, (xb_[i] + 1e-9) / u[i]);
      if (!std::isfinite(bound)) return Result::Unbounded;
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= kPivotTol || xb_[i] / u[i] > bound) continue;
        if (leave == m_ || (bland ? basis_[i] < basis_[leave] : u[i] > u[leave])) leave = i;
      }
      const double theta = std::max(0.0, xb_[leave] / u[leave]);
      degenerate_run = theta < 1e-12 ? degenerate_run + 1 : 0;
      in_basis[basis_[leave]] = false;
      in_basis[enter] = true;
      pivot(leave, enter, u, theta);
    }
    return Result::Failed;
  }

  void drive_out() {
    std::vector<bool> in_basis(n_ + m_, false);
    for (auto j : basis_) in_basis[j] = true;
    std::vector<double> u(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis[j]) continue;
        column(j, u);
        if (std::abs(u[r]) < 1e-7) continue;
        in_basis[basis_[r]] = false;
        in_basis[j] = true;
        pivot(r, j, u, xb_[r] / u[r]);
        break;
      }
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<std::pair<std::size_t, double>>> cols_;
  std::vector<double> b_, c_;
  std::vector<double> binv_;  // row-major m×m
  std::vector<double> xb_;
  std::vector<std::size_t> basis_;
  std::size_t since_refactor_ = 0;
};

// min c·x, A·x = b (b >= 0), x >= 0.
class StandardForm {
 public:
  StandardForm(std::vector<SparseColumn> cols, RationalVector b, RationalVector c)
      : cols_(std::move(cols)), b_(std::move(b)), c_(std::move(c)), m_(b_.size()), n_(cols_.size()) {}

  // Starts from the basis proposed by the floating-point solver when it is
  // exactly nonsingular and feasible, otherwise from the all-artificial basis.
  LpStatus solve(bool float_start) {
    bool warm = false;
    if (float_start)
      if (auto proposal = FloatSimplex(cols_, b_, c_).solve()) warm = load_basis(*proposal);
    if (!warm) load_basis(artificial_basis());

    RationalVector phase1(n_ + m_);
    for (std::size_t i = 0; i < m_; ++i) phase1[n_ + i] = Rational(1);
    if (infeasibility().sign() > 0) run(phase1);
    if (infeasibility().sign() > 0) return LpStatus::Infeasible;
    drive_out_artificials();

    RationalVector phase2(n_ + m_);
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = c_[j];
    if (!run(phase2)) return LpStatus::Unbounded;
    return LpStatus::Optimal;
  }

  RationalVector solution() const {
    RationalVector x(n_);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = xb_[i];
    return x;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::vector<std::size_t> artificial_basis() const {
    std::vector<std::size_t> basis(m_);
    for (std::size_t i = 0; i < m_; ++i) basis[i] = n_ + i;
    return basis;
  }

  Rational infeasibility() const {
    Rational s;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) s += xb_[i];
    return s;
  }

  // Exact inverse of the basis matrix by Gauss-Jordan elimination; false if
  // the basis is singular or its point is not nonnegative.
  bool load_basis(const std::vector<std::size_t>& basis) {
    RationalMatrix a(m_, RationalVector(m_));
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t j = basis[k];
      if (j >= n_) {
        a[j - n_][k] = Rational(1);
      } else {
        for (const auto& [r, v] : cols_[j].entries) a[r][k] = v;
      }
    }
    RationalMatrix inv(m_, RationalVector(m_));
    for (std::size_t i = 0; i < m_; ++i) inv[i][i] = Rational(1);
    std::vector<std::size_t> nz_a, nz_i;
    for (std::size_t k = 0; k < m_; ++k) {
      std::size_t p = m_;
      for (std::size_t i = k; i < m_; ++i)
        if (!a[i][k].is_zero()) {
          p = i;
          break;
        }
      if (p == m_) return false;
      std::swap(a[p], a[k]);
      std::swap(inv[p], inv[k]);
      const Rational s = a[k][k].reciprocal();
      nz_a.clear();
      nz_i.clear();
      for (std::size_t t = k; t < m_; ++t)
        if (!a[k][t].is_zero()) {
          a[k][t] *= s;
          nz_a.push_back(t);
        }
      for (std::size_t t = 0; t < m_; ++t)
        if (!inv[k][t].is_zero()) {
          inv[k][t] *= s;
          nz_i.push_back(t);
        }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == k || a[i][k].is_zero()) continue;
        const Rational f = a[i][k];
        for (auto t : nz_a) a[i][t] -= f * a[k][t];
        for (auto t : nz_i) inv[i][t] -= f * inv[k][t];
      }
    }
    RationalVector xb(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t r = 0; r < m_; ++r)
        if (!inv[i][r].is_zero() && !b_[r].is_zero()) xb[i] += inv[i][r] * b_[r];
      if (xb[i].sign() < 0) return false;
    }
    basis_ = basis;
    binv_ = std::move(inv);
    xb_ = std::move(xb);
    return true;
  }

  const SparseColumn& column(std::size_t j) const {
    static thread_local SparseColumn unit;
    if (j < n_) return cols_[j];
    unit.entries.assign(1, {j - n_, Rational(1)});
    return unit;
  }

  RationalVector ftran(const SparseColumn& col) const {
    RationalVector u(m_);
    for (const auto& [r, v] : col.entries) {
      for (std::size_t i = 0; i < m_; ++i)
        if (!binv_[i][r].is_zero()) u[i] += binv_[i][r] * v;
    }
    return u;
  }

  // Simplex iterations for the given costs; artificial columns never enter.
  // Returns false when unbounded.
  bool run(const RationalVector& cost) {
    // y = c_B · B^{-1}
    RationalVector y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t k = 0; k < m_; ++k)
        if (!binv_[i][k].is_zero()) y[k] += cb * binv_[i][k];
    }
    std::vector<bool> in_basis(n_ + m_, false);
    for (auto j : basis_) in_basis[j] = true;
    std::size_t degenerate_run = 0;
    for (;;) {
      // Dantzig pricing while the objective moves; Bland's rule once a run of
      // degenerate pivots suggests stalling, so termination is guaranteed.
      const bool bland = degenerate_run >= kStallLimit;
      std::size_t enter = n_;
      Rational dq;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis[j]) continue;
        Rational d = cost[j];
        for (const auto& [r, v] : cols_[j].entries)
          if (!y[r].is_zero()) d -= y[r] * v;
        if (d.sign() >= 0) continue;
        if (enter == n_ || d < dq) {
          enter = j;
          dq = std::move(d);
          if (bland) break;
        }
      }
      if (enter == n_) return true;
      RationalVector u = ftran(cols_[enter]);
      // Among minimum ratios, the lowest basic variable index leaves.
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i].sign() <= 0) continue;
        Rational ratio = xb_[i] / u[i];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      degenerate_run = xb_[leave].is_zero() ? degenerate_run + 1 : 0;
      // y += (d_q / u_r) · (row r of B^{-1}), before the pivot.
      const Rational f = dq / u[leave];
      for (std::size_t k = 0; k < m_; ++k)
        if (!binv_[leave][k].is_zero()) y[k] += f * binv_[leave][k];
      pivot(leave, u);
      in_basis[basis_[leave]] = false;
      in_basis[enter] = true;
      basis_[leave] = enter;
    }
  }

  void pivot(std::size_t r, const RationalVector& u) {
    ++pivots_;
    const Rational inv = u[r].reciprocal();
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < m_; ++k) {
      if (binv_[r][k].is_zero()) continue;
      binv_[r][k] *= inv;
      nz.push_back(k);
    }
    xb_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i].is_zero()) continue;
      const Rational& f = u[i];
      for (auto k : nz) binv_[i][k] -= f * binv_[r][k];
      if (!xb_[r].is_zero()) xb_[i] -= f * xb_[r];
    }
  }

  // Replaces zero-level basic artificials by structural columns where
  // possible; rows where that fails are redundant and keep their artificial.
  void drive_out_artificials() {
    std::vector<bool> in_basis(n_ + m_, false);
    for (auto j : basis_) in_basis[j] = true;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis[j]) continue;
        Rational ur;
        for (const auto& [row, v] : cols_[j].entries)
          if (!binv_[r][row].is_zero()) ur += binv_[r][row] * v;
        if (ur.is_zero()) continue;
        RationalVector u = ftran(cols_[j]);
        in_basis[basis_[r]] = false;
        pivot(r, u);
        basis_[r] = j;
        in_basis[j] = true;
        break;
      }
    }
  }

  static constexpr std::size_t kStallLimit = 50;

  std::vector<SparseColumn> cols_;
  RationalVector b_;
  RationalVector c_;
  std::size_t m_;
  std::size_t n_;
  RationalMatrix binv_;
  std::vector<std::size_t> basis_;
  RationalVector xb_;
  std::size_t pivots_ = 0;
};

}  // namespace lp_detail

inline LpOutcome lp_solve(const LinearProgram& lp, const LpOptions& options = {}) {
  lp.validate();
  const std::size_t n = lp.num_vars;
  auto lower_of = [&](std::size_t j) -> std::optional<Rational> {
    if (lp.lower.empty()) return Rational(0);
    return lp.lower[j];
  };

  // Column layout: one column per bounded variable (x = l + x'), two per free
  // variable (x = x⁺ - x⁻), then one surplus column per inequality row.
  struct VarMap {
    std::size_t pos;
    std::optional<std::size_t> neg;
    Rational shift;
  };
  std::vector<VarMap> vars(n);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    auto l = lower_of(j);
    vars[j].pos = ncols++;
    if (l) {
      vars[j].shift = *l;
    } else {
      vars[j].neg = ncols++;
    }
  }
  const std::size_t nrows = lp.eq.size() + lp.ineq.size();
  const std::size_t surplus0 = ncols;
  ncols += lp.ineq.size();

  std::vector<lp_detail::SparseColumn> cols(ncols);
  RationalVector b(nrows);
  auto add_row = [&](std::size_t r, const RationalVector& row, const Rational& rhs) {
    Rational shifted = rhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j].is_zero()) continue;
      cols[vars[j].pos].entries.emplace_back(r, row[j]);
      if (vars[j].neg) cols[*vars[j].neg].entries.emplace_back(r, -row[j]);
      if (!vars[j].shift.is_zero()) shifted -= row[j] * vars[j].shift;
    }
    b[r] = shifted;
  };
  for (std::size_t i = 0; i < lp.eq.size(); ++i) add_row(i, lp.eq[i], lp.eq_rhs[i]);
  for (std::size_t i = 0; i < lp.ineq.size(); ++i) {
    const std::size_t r = lp.eq.size() + i;
    add_row(r, lp.ineq[i], lp.ineq_rhs[i]);
    cols[surplus0 + i].entries.emplace_back(r, Rational(-1));
  }
  // Phase I needs b >= 0.
  for (std::size_t r = 0; r < nrows; ++r) {
    if (b[r].sign() >= 0) continue;
    b[r] = -b[r];
    for (auto& col : cols)
      for (auto& [row, v] : col.entries)
        if (row == r) v = -v;
  }

  RationalVector c(ncols);
  if (!lp.objective.empty()) {
    const bool maximize = lp.sense == Sense::Maximize;
    for (std::size_t j = 0; j < n; ++j) {
      Rational cj = maximize ? -lp.objective[j] : lp.objective[j];
      if (cj.is_zero()) continue;
      c[vars[j].pos] = cj;
      if (vars[j].neg) c[*vars[j].neg] = -cj;
    }
  }

  lp_detail::StandardForm sf(std::move(cols), b, c);
  LpOutcome out;
  out.status = sf.solve(options.float_start);
  out.pivots = sf.pivots();
  if (out.status != LpStatus::Optimal) return out;

  const RationalVector xs = sf.solution();
  RationalVector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = xs[vars[j].pos] + vars[j].shift;
    if (vars[j].neg) x[j] -= xs[*vars[j].neg];
  }
  // The certificate must satisfy every constraint exactly.
  for (std::size_t i = 0; i < lp.eq.size(); ++i)
    if (dot(lp.eq[i], x) != lp.eq_rhs[i]) throw std::logic_error("lp_solve: equality violated by optimal point");
  for (std::size_t i = 0; i < lp.ineq.size(); ++i)
    if (dot(lp.ineq[i], x) < lp.ineq_rhs[i]) throw std::logic_error("lp_solve: inequality violated by optimal point");
  for (std::size_t j = 0; j < n; ++j) {
    auto l = lower_of(j);
    if (l && x[j] < *l) throw std::logic_error("lp_solve: lower bound violated by optimal point");
  }
  out.value = lp.objective.empty() ? Rational() : dot(lp.objective, x);
  out.point = std::move(x);
  return out;
}

}  // namespace nspoly
