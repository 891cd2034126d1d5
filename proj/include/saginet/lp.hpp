#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "saginet/errors.hpp"

namespace saginet {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class Rel { LessEq, Eq, GreaterEq };

struct LpRow {
  std::vector<std::pair<int, double>> terms;
  Rel rel = Rel::LessEq;
  double rhs = 0.0;
};

struct LpProblem {
  bool maximize = false;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }

  int add_var(double cost, double lo, double up) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(up);
    return num_vars() - 1;
  }
  void add_row(std::vector<std::pair<int, double>> terms, Rel rel, double rhs) {
    rows.push_back({std::move(terms), rel, rhs});
  }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  long iterations = 0;
};

namespace detail {

/// Two-phase primal simplex on a dense tableau with explicit variable
/// bounds.  Nonbasic variables rest at a bound (or at zero when free) and
/// the ratio test allows bound flips, so [0,1] boxes never become rows.
/// Dantzig pricing with lowest-index tie-breaking; after a long run of
/// degenerate pivots the solver switches to Bland's rule for termination.
///
/// The tableau never encodes the boxes, so after run() the instance can be
/// reused: set_var_bounds() moves a box, rerun() repairs primal
/// feasibility with dual simplex pivots and polishes with the primal
/// phase.  That turns a branch-and-bound node into a handful of pivots
/// instead of a fresh two-phase solve.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LpProblem& p) : p_(p) {}

  LpResult run() {
    LpResult res;
    if (!validate(res)) return res;
    build();
    if (first_art_ < n_) {
      assign_phase_costs(true);
      const LpStatus s1 = optimize();
      if (s1 == LpStatus::IterationLimit) {
        res.status = s1;
        res.iterations = iters_;
        return res;
      }
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= first_art_) infeas += std::max(0.0, beta_[i]);
      }
      if (infeas > kFeasTol * scale_) {
        res.status = LpStatus::Infeasible;
        res.iterations = iters_;
        return res;
      }
      retire_artificials();
    }
    assign_phase_costs(false);
    return finish(optimize());
  }

  /// Replace variable j's box without rebuilding the tableau.  Nonbasic
  /// variables are snapped onto the moved bound and the basic values are
  /// shifted to match; a basic variable left outside its new box is what
  /// the next rerun() repairs.
  void set_var_bounds(int j, double lo, double hi) {
    lo_[j] = lo;
    up_[j] = hi;
    if (state_[j] == kBasic) return;
    double target = xval_[j];
    VState st = state_[j];
    if (st == kAtLower) {
      if (std::isfinite(lo)) {
        target = lo;
      } else if (std::isfinite(hi)) {
        target = hi;
        st = kAtUpper;
      } else {
        target = 0.0;
        st = kAtZero;
      }
    } else if (st == kAtUpper) {
      if (std::isfinite(hi)) {
        target = hi;
      } else if (std::isfinite(lo)) {
        target = lo;
        st = kAtLower;
      } else {
        target = 0.0;
        st = kAtZero;
      }
    } else {
      if (std::isfinite(lo) && lo > 0.0) {
        target = lo;
        st = kAtLower;
      } else if (std::isfinite(hi) && hi < 0.0) {
        target = hi;
        st = kAtUpper;
      }
    }
    const double delta = target - xval_[j];
    if (delta != 0.0) {
      for (int i = 0; i < m_; ++i) beta_[i] -= delta * A(i, j);
      xval_[j] = target;
    }
    state_[j] = st;
  }

  /// Re-optimize after bound changes.  Requires a prior run() that reached
  /// phase 2; the reduced costs stay dual feasible across bound moves, so
  /// the dual phase either restores primal feasibility or proves the new
  /// box infeasible.  The pivoted tableau drifts over long pivot chains,
  /// so both outcomes are verified against the original rows before they
  /// escape; anything unverifiable comes back as IterationLimit and the
  /// caller rebuilds from scratch.
  LpResult rerun() {
    LpResult res;
    for (int j = 0; j < n_struct_; ++j) {
      if (lo_[j] > up_[j] + kFeasTol) {
        res.status = LpStatus::Infeasible;
        return res;
      }
    }
    iters_ = 0;
    stall_ = 0;
    bland_ = false;
    dual_fail_row_ = -1;
    LpStatus s = dual_phase();
    if (s == LpStatus::Infeasible && !confirm_infeasible()) {
      s = LpStatus::IterationLimit;
    }
    if (s == LpStatus::Optimal) {
      s = optimize();
      if (s == LpStatus::Optimal && !verify_optimal()) s = LpStatus::IterationLimit;
    }
    return finish(s);
  }

 private:
  enum VState : unsigned char { kBasic, kAtLower, kAtUpper, kAtZero };

  static constexpr double kFeasTol = 1e-8;
  static constexpr double kDualTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kTieTol = 1e-12;
  static constexpr int kStallLimit = 200;

  const LpProblem& p_;
  int m_ = 0, n_ = 0, n_struct_ = 0, first_art_ = 0;
  std::vector<double> a_;
  std::vector<double> beta_;
  std::vector<double> d_;
  std::vector<double> lo_, up_, xval_, cost_;
  std::vector<int> basis_;
  std::vector<VState> state_;
  std::vector<double> full_;
  double scale_ = 1.0;
  int dual_fail_row_ = -1;
  bool dual_fail_up_ = false;
  bool bland_ = false;
  int stall_ = 0;
  long iters_ = 0;
  long iter_limit_ = 0;

  double& A(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  bool validate(LpResult& res) {
    const std::size_t nv = p_.objective.size();
    if (p_.lower.size() != nv || p_.upper.size() != nv) {
      throw DimensionMismatchError("lp: bound arrays do not match the objective length");
    }
    for (const auto& row : p_.rows) {
      for (const auto& [j, c] : row.terms) {
        if (j < 0 || static_cast<std::size_t>(j) >= nv) {
          throw DimensionMismatchError("lp: row references variable out of range");
        }
        (void)c;
      }
    }
    for (std::size_t j = 0; j < nv; ++j) {
      if (std::isnan(p_.lower[j]) || std::isnan(p_.upper[j]) || std::isnan(p_.objective[j])) {
        throw InvalidSpecError("lp: NaN in model data");
      }
      if (p_.lower[j] > p_.upper[j] + kFeasTol) {
        res.status = LpStatus::Infeasible;
        return false;
      }
    }
    return true;
  }

  void build() {
    n_struct_ = p_.num_vars();
    m_ = static_cast<int>(p_.rows.size());
    const int n_slack = m_;
    lo_.assign(static_cast<std::size_t>(n_struct_) + n_slack, 0.0);
    up_.assign(lo_.size(), kLpInfinity);
    cost_.assign(lo_.size(), 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      lo_[j] = p_.lower[j];
      up_[j] = p_.upper[j];
    }
    // Dense rows in <= form with a unit slack; bounds make it an equality.
    std::vector<double> dense(static_cast<std::size_t>(m_) *
                              (static_cast<std::size_t>(n_struct_) + n_slack));
    std::vector<double> rhs(static_cast<std::size_t>(m_), 0.0);
    scale_ = 1.0;
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = p_.rows[i];
      const double sgn = row.rel == Rel::GreaterEq ? -1.0 : 1.0;
      double* r = dense.data() + static_cast<std::size_t>(i) * (n_struct_ + n_slack);
      for (const auto& [j, c] : row.terms) r[j] += sgn * c;
      r[n_struct_ + i] = 1.0;
      if (row.rel == Rel::Eq) up_[n_struct_ + i] = 0.0;
      rhs[i] = sgn * row.rhs;
      scale_ = std::max(scale_, std::abs(rhs[i]));
    }

    state_.assign(lo_.size(), kAtLower);
    xval_.assign(lo_.size(), 0.0);
    for (std::size_t j = 0; j < lo_.size(); ++j) {
      if (std::isfinite(lo_[j])) {
        state_[j] = kAtLower;
        xval_[j] = lo_[j];
      } else if (std::isfinite(up_[j])) {
        state_[j] = kAtUpper;
        xval_[j] = up_[j];
      } else {
        state_[j] = kAtZero;
        xval_[j] = 0.0;
      }
    }

    basis_.assign(static_cast<std::size_t>(m_), -1);
    beta_.assign(static_cast<std::size_t>(m_), 0.0);
    std::vector<int> needs_art;
    for (int i = 0; i < m_; ++i) {
      const double* r = dense.data() + static_cast<std::size_t>(i) * (n_struct_ + n_slack);
      double resid = rhs[i];
      for (int j = 0; j < n_struct_; ++j) {
        if (r[j] != 0.0) resid -= r[j] * xval_[j];
      }
      const int sj = n_struct_ + i;
      if (resid >= lo_[sj] - kFeasTol && resid <= up_[sj] + kFeasTol) {
        basis_[i] = sj;
        state_[sj] = kBasic;
        beta_[i] = resid;
      } else {
        needs_art.push_back(i);
        beta_[i] = resid;  // sign fixed below
      }
    }
    const int n_art = static_cast<int>(needs_art.size());
    first_art_ = n_struct_ + n_slack;
    n_ = first_art_ + n_art;
    lo_.resize(static_cast<std::size_t>(n_), 0.0);
    up_.resize(static_cast<std::size_t>(n_), kLpInfinity);
    cost_.resize(static_cast<std::size_t>(n_), 0.0);
    xval_.resize(static_cast<std::size_t>(n_), 0.0);
    state_.resize(static_cast<std::size_t>(n_), kAtLower);

    a_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double* r = dense.data() + static_cast<std::size_t>(i) * (n_struct_ + n_slack);
      std::copy(r, r + n_struct_ + n_slack, a_.data() + static_cast<std::size_t>(i) * n_);
    }
    for (int t = 0; t < n_art; ++t) {
      const int i = needs_art[t];
      const int aj = first_art_ + t;
      // Slack stays nonbasic at a bound; the artificial absorbs the
      // residual.  Negate the row when the residual is negative so the
      // artificial column is a clean +1 in the initial basis.
      if (beta_[i] < 0.0) {
        for (int j = 0; j < n_; ++j) A(i, j) = -A(i, j);
      }
      A(i, aj) = 1.0;
      basis_[i] = aj;
      state_[aj] = kBasic;
      beta_[i] = std::abs(beta_[i]);
    }
    iter_limit_ = std::max<long>(5000, 60L * (m_ + n_));
  }

  void assign_phase_costs(bool phase1) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    if (phase1) {
      for (int j = first_art_; j < n_; ++j) cost_[j] = 1.0;
    } else {
      const double sgn = p_.maximize ? -1.0 : 1.0;
      for (int j = 0; j < n_struct_; ++j) cost_[j] = sgn * p_.objective[j];
    }
    d_.assign(static_cast<std::size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) d_[j] = cost_[j];
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = a_.data() + static_cast<std::size_t>(i) * n_;
      for (int j = 0; j < n_; ++j) d_[j] -= cb * row[j];
    }
    stall_ = 0;
  }

  /// After phase 1, pin artificials to zero and pivot basic ones out where
  /// a nonzero entry exists; rows without one are redundant and keep their
  /// fixed artificial harmlessly.
  void retire_artificials() {
    for (int j = first_art_; j < n_; ++j) {
      lo_[j] = up_[j] = 0.0;
      if (state_[j] != kBasic) xval_[j] = 0.0;
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      int enter = -1;
      for (int j = 0; j < first_art_; ++j) {
        if (state_[j] != kBasic && std::abs(A(i, j)) > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) continue;
      const int leaving = basis_[i];
      const double enter_val = xval_[enter];
      reduce(i, enter);
      state_[leaving] = kAtLower;
      xval_[leaving] = 0.0;
      basis_[i] = enter;
      state_[enter] = kBasic;
      beta_[i] = enter_val;
    }
  }

  /// Check the point implied by the basis and rest values against the
  /// original rows.  The dense tableau carries no factorization to
  /// refresh, so numerical decay is caught here instead.
  bool equations_hold() {
    full_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) full_[j] = xval_[j];
    for (int i = 0; i < m_; ++i) full_[basis_[i]] = beta_[i];
    const double tol = 1e-6 * scale_;
    for (int j = first_art_; j < n_; ++j) {
      if (std::abs(full_[j]) > tol) return false;
    }
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = p_.rows[i];
      const double sgn = row.rel == Rel::GreaterEq ? -1.0 : 1.0;
      double act = 0.0;
      for (const auto& [j, c] : row.terms) act += c * full_[j];
      if (std::abs(sgn * (act - row.rhs) + full_[n_struct_ + i]) > tol) return false;
    }
    return true;
  }

  /// A dual dead end is a proof only if the failing row, taken over every
  /// nonbasic box exactly, still cannot reach the violated bound.  The
  /// ratio test skips tiny pivot entries, so the claim is re-checked here
  /// with no magnitude cutoff before it escapes.
  bool confirm_infeasible() {
    const int r = dual_fail_row_;
    if (r < 0 || !equations_hold()) return false;
    const double* row = a_.data() + static_cast<std::size_t>(r) * n_;
    const int b = basis_[r];
    double reach = beta_[r];
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == kBasic) continue;
      const double alpha = row[j];
      if (alpha == 0.0) continue;
      const double lo_move = -alpha * (lo_[j] - xval_[j]);
      const double up_move = -alpha * (up_[j] - xval_[j]);
      const double gain = dual_fail_up_ ? std::max({0.0, lo_move, up_move})
                                        : std::min({0.0, lo_move, up_move});
      if (!std::isfinite(gain)) return false;
      reach += gain;
    }
    const double margin = kFeasTol * scale_;
    return dual_fail_up_ ? reach < lo_[b] - margin : reach > up_[b] + margin;
  }

  /// A warm optimum is only trusted with both certificates in hand: the
  /// implied point satisfies the original rows and boxes, and the reduced
  /// costs carry optimal signs.
  bool verify_optimal() {
    if (!equations_hold()) return false;
    const double btol = 10.0 * kFeasTol * scale_;
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      if (beta_[i] < lo_[b] - btol || beta_[i] > up_[b] + btol) return false;
    }
    double cscale = 1.0;
    for (int j = 0; j < n_struct_; ++j) cscale = std::max(cscale, std::abs(cost_[j]));
    const double dtol = 1e-7 * cscale;
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == kBasic) continue;
      if (state_[j] == kAtLower && std::abs(xval_[j] - lo_[j]) > btol) return false;
      if (state_[j] == kAtUpper && std::abs(xval_[j] - up_[j]) > btol) return false;
      if (state_[j] != kAtZero && fixed_var(j)) continue;
      const double dj = d_[j];
      if (state_[j] == kAtLower && dj < -dtol) return false;
      if (state_[j] == kAtUpper && dj > dtol) return false;
      if (state_[j] == kAtZero && std::abs(dj) > dtol) return false;
    }
    return true;
  }

  LpResult finish(LpStatus s) {
    LpResult res;
    res.status = s;
    res.iterations = iters_;
    if (s != LpStatus::Optimal) return res;
    res.x.assign(static_cast<std::size_t>(n_struct_), 0.0);
    for (int j = 0; j < n_struct_; ++j) res.x[j] = xval_[j];
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) res.x[basis_[i]] = beta_[i];
    }
    for (int j = 0; j < n_struct_; ++j) {
      if (std::isfinite(lo_[j])) res.x[j] = std::max(res.x[j], lo_[j]);
      if (std::isfinite(up_[j])) res.x[j] = std::min(res.x[j], up_[j]);
      res.objective += p_.objective[j] * res.x[j];
    }
    return res;
  }

  /// Dual simplex: drive out-of-box basic variables to the violated bound,
  /// picking the entering column by the smallest reduced-cost ratio so the
  /// duals stay feasible.  The entering value may overshoot its own box;
  /// the variable then simply becomes a later leaving candidate.  No
  /// eligible column proves the box infeasible.
  LpStatus dual_phase() {
    const double feas_eps = kFeasTol * scale_;
    while (true) {
      if (++iters_ > iter_limit_) return LpStatus::IterationLimit;
      int r = -1;
      bool need_up = false;
      double worst = feas_eps;
      for (int i = 0; i < m_; ++i) {
        const int b = basis_[i];
        double v = 0.0;
        bool nu = false;
        if (std::isfinite(lo_[b]) && beta_[i] < lo_[b]) {
          v = lo_[b] - beta_[i];
          nu = true;
        } else if (std::isfinite(up_[b]) && beta_[i] > up_[b]) {
          v = beta_[i] - up_[b];
        }
        if (v <= (bland_ ? feas_eps : worst)) continue;
        if (bland_ && r >= 0 && basis_[r] < b) continue;
        r = i;
        need_up = nu;
        if (!bland_) worst = v;
      }
      if (r < 0) return LpStatus::Optimal;

      const int leave_var = basis_[r];
      const double* row = a_.data() + static_cast<std::size_t>(r) * n_;
      int q = -1;
      double best_ratio = kLpInfinity, best_piv = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (state_[j] == kBasic) continue;
        if (state_[j] != kAtZero && fixed_var(j)) continue;
        const double alpha = row[j];
        if (std::abs(alpha) <= kPivotTol) continue;
        bool ok;
        if (state_[j] == kAtLower) {
          ok = need_up ? alpha < 0.0 : alpha > 0.0;
        } else if (state_[j] == kAtUpper) {
          ok = need_up ? alpha > 0.0 : alpha < 0.0;
        } else {
          ok = true;
        }
        if (!ok) continue;
        if (bland_) {
          q = j;
          break;
        }
        const double ratio = std::max(0.0, std::abs(d_[j]) / std::abs(alpha));
        if (ratio < best_ratio - kTieTol ||
            (ratio <= best_ratio + kTieTol && std::abs(alpha) > std::abs(best_piv))) {
          best_ratio = ratio;
          best_piv = alpha;
          q = j;
        }
      }
      if (q < 0) {
        dual_fail_row_ = r;
        dual_fail_up_ = need_up;
        return LpStatus::Infeasible;
      }

      const double target = need_up ? lo_[leave_var] : up_[leave_var];
      const double step = (beta_[r] - target) / row[q];
      const double enter_val = xval_[q] + step;
      const double progress = std::abs(d_[q] / row[q]) * std::abs(beta_[r] - target);
      for (int i = 0; i < m_; ++i) {
        if (i != r) beta_[i] -= step * A(i, q);
      }
      reduce(r, q);
      state_[leave_var] = need_up ? kAtLower : kAtUpper;
      xval_[leave_var] = target;
      basis_[r] = q;
      state_[q] = kBasic;
      beta_[r] = enter_val;
      if (progress < 1e-12) {
        if (++stall_ > kStallLimit) bland_ = true;
      } else {
        stall_ = 0;
      }
    }
  }

  void reduce(int r, int q) {
    double* prow = a_.data() + static_cast<std::size_t>(r) * n_;
    const double piv = prow[q];
    for (int j = 0; j < n_; ++j) prow[j] /= piv;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = a_.data() + static_cast<std::size_t>(i) * n_;
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j < n_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    const double fd = d_[q];
    if (fd != 0.0) {
      for (int j = 0; j < n_; ++j) d_[j] -= fd * prow[j];
      d_[q] = 0.0;
    }
  }

  bool fixed_var(int j) const { return up_[j] - lo_[j] < kPivotTol; }

  LpStatus optimize() {
    while (true) {
      if (++iters_ > iter_limit_) return LpStatus::IterationLimit;
      int q = -1, dir = 0;
      double best = kDualTol;
      for (int j = 0; j < n_; ++j) {
        if (state_[j] == kBasic) continue;
        if (state_[j] != kAtZero && fixed_var(j)) continue;
        const double dj = d_[j];
        int cand_dir = 0;
        double score = 0.0;
        if (state_[j] == kAtLower && dj < -kDualTol) {
          cand_dir = 1;
          score = -dj;
        } else if (state_[j] == kAtUpper && dj > kDualTol) {
          cand_dir = -1;
          score = dj;
        } else if (state_[j] == kAtZero && std::abs(dj) > kDualTol) {
          cand_dir = dj < 0.0 ? 1 : -1;
          score = std::abs(dj);
        } else {
          continue;
        }
        if (bland_) {
          q = j;
          dir = cand_dir;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
          dir = cand_dir;
        }
      }
      if (q < 0) return LpStatus::Optimal;

      double t = std::isfinite(up_[q]) && std::isfinite(lo_[q]) ? up_[q] - lo_[q] : kLpInfinity;
      int leave = -1, leave_var = -1;
      bool leave_to_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double alpha = A(i, q);
        if (std::abs(alpha) <= kPivotTol) continue;
        const double delta = dir * alpha;
        const int bi = basis_[i];
        double ti;
        bool to_upper;
        if (delta > 0.0) {
          if (!std::isfinite(lo_[bi])) continue;
          ti = (beta_[i] - lo_[bi]) / delta;
          to_upper = false;
        } else {
          if (!std::isfinite(up_[bi])) continue;
          ti = (up_[bi] - beta_[i]) / (-delta);
          to_upper = true;
        }
        if (ti < 0.0) ti = 0.0;
        const bool better = ti < t - kTieTol;
        const bool tied = !better && ti <= t + kTieTol &&
                          (leave < 0 || bi < leave_var);
        if (better || tied) {
          t = std::min(t, ti);
          leave = i;
          leave_var = bi;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(t)) return LpStatus::Unbounded;

      const double obj_drop = std::abs(d_[q]) * t;
      if (leave < 0) {
        // Bound flip: the entering variable crosses its box untouched by
        // any basic limit.
        for (int i = 0; i < m_; ++i) beta_[i] -= dir * t * A(i, q);
        xval_[q] = dir > 0 ? up_[q] : lo_[q];
        state_[q] = dir > 0 ? kAtUpper : kAtLower;
      } else {
        const double enter_val = xval_[q] + dir * t;
        for (int i = 0; i < m_; ++i) {
          if (i != leave) beta_[i] -= dir * t * A(i, q);
        }
        const int lv = basis_[leave];
        reduce(leave, q);
        state_[lv] = leave_to_upper ? kAtUpper : kAtLower;
        xval_[lv] = leave_to_upper ? up_[lv] : lo_[lv];
        basis_[leave] = q;
        state_[q] = kBasic;
        beta_[leave] = enter_val;
      }
      if (obj_drop < 1e-12) {
        if (++stall_ > kStallLimit) bland_ = true;
      } else {
        stall_ = 0;
      }
    }
  }
};

}  // namespace detail

inline LpResult lp_solve(const LpProblem& problem) {
  detail::BoundedSimplex solver(problem);
  return solver.run();
}

}  // namespace saginet
