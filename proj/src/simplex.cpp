#include "latlim/simplex.hpp"

#include <algorithm>

#include "latlim/errors.hpp"

namespace latlim {

void FeasibilityProblem::validate() const {
  const Index n = equalities.cols();
  if (rhs.size() != equalities.rows())
    throw DimensionMismatch("rhs length does not match equality rows");
  if (static_cast<Index>(lower.size()) != n || static_cast<Index>(upper.size()) != n)
    throw DimensionMismatch("bound lists do not match variable count");
}

bool FeasibilityProblem::satisfied_by(const RatVec& x) const {
  if (x.size() != num_vars()) return false;
  const RatVec residual = equalities * x - rhs;
  if (!is_zero(residual)) return false;
  for (Index j = 0; j < num_vars(); ++j) {
    if (lower[j] && x(j) < *lower[j]) return false;
    if (upper[j] && x(j) > *upper[j]) return false;
  }
  return true;
}

FeasibilityProblem FeasibilityProblem::boxed(RatMat a, RatVec b, RatVec lo, RatVec hi) {
  FeasibilityProblem p;
  p.equalities = std::move(a);
  p.rhs = std::move(b);
  p.lower.resize(p.equalities.cols());
  p.upper.resize(p.equalities.cols());
  if (lo.size() != p.equalities.cols() || hi.size() != p.equalities.cols())
    throw DimensionMismatch("box bounds do not match variable count");
  for (Index j = 0; j < p.equalities.cols(); ++j) {
    p.lower[j] = lo(j);
    p.upper[j] = hi(j);
  }
  return p;
}

bool farkas_valid(const FeasibilityProblem& p, const FarkasCertificate& cert) {
  if (cert.y.size() != p.num_rows()) return false;
  const RatVec g = p.equalities.transpose() * cert.y;
  Rat box_sup = 0;
  for (Index j = 0; j < p.num_vars(); ++j) {
    if (g(j) > 0) {
      if (!p.upper[j]) return false;  // sup is +inf, no contradiction
      box_sup += g(j) * *p.upper[j];
    } else if (g(j) < 0) {
      if (!p.lower[j]) return false;
      box_sup += g(j) * *p.lower[j];
    }
  }
  const Rat rhs_value = cert.y.dot(p.rhs);
  return box_sup < rhs_value;
}

bool dual_bound_valid(const FeasibilityProblem& p, const RatVec& cost,
                      const DualCertificate& cert) {
  if (cert.y.size() != p.num_rows() || cert.reduced_costs.size() != p.num_vars())
    return false;
  const RatVec d = cost - p.equalities.transpose() * cert.y;
  if (!exactly_equal(d, cert.reduced_costs)) return false;
  Rat bound = cert.y.dot(p.rhs);
  for (Index j = 0; j < p.num_vars(); ++j) {
    if (d(j) > 0) {
      if (!p.lower[j]) return false;  // inf over the box would be -inf
      bound += d(j) * *p.lower[j];
    } else if (d(j) < 0) {
      if (!p.upper[j]) return false;
      bound += d(j) * *p.upper[j];
    }
  }
  return bound == cert.bound;
}

namespace {

// Bounded-variable simplex tableau over exact rationals. Columns are the
// structural variables followed by one artificial per row; artificials start
// basic in phase 1 and are frozen at [0,0] in phase 2.
class Tableau {
 public:
  Tableau(const RatVec& cost, const FeasibilityProblem& p)
      : m_(p.num_rows()), n_(p.num_vars()), cols_(n_ + m_), p_(p), cost_(cost) {
    lower_.resize(cols_);
    upper_.resize(cols_);
    for (Index j = 0; j < n_; ++j) {
      lower_[j] = p.lower[j];
      upper_[j] = p.upper[j];
    }
    for (Index j = n_; j < cols_; ++j) lower_[j] = Rat(0);  // artificials >= 0

    work_ = RatMat::Zero(m_, cols_);
    work_.block(0, 0, m_, n_) = p.equalities;
    rhs_ = p.rhs;

    // Nonbasic structural variables start at a finite bound (or 0 when free).
    value_.assign(cols_, Rat(0));
    basic_in_row_.assign(m_, -1);
    row_of_.assign(cols_, -1);
    for (Index j = 0; j < n_; ++j) {
      if (lower_[j])
        value_[j] = *lower_[j];
      else if (upper_[j])
        value_[j] = *upper_[j];
      at_upper_.push_back(!lower_[j] && upper_[j]);
    }
    at_upper_.resize(cols_, false);

    RatVec residual = rhs_;
    for (Index j = 0; j < n_; ++j)
      if (value_[j] != 0) residual -= work_.col(j) * value_[j];
    // Rows with negative residual are negated so every artificial column is a
    // +1 unit column and the tableau starts in canonical form.
    for (Index r = 0; r < m_; ++r) {
      artificial_sign_.push_back(residual(r) < 0 ? Rat(-1) : Rat(1));
      if (artificial_sign_.back() < 0) {
        for (Index j = 0; j < n_; ++j) work_(r, j) = -work_(r, j);
        rhs_(r) = -rhs_(r);
      }
      work_(r, n_ + r) = 1;
      basic_in_row_[r] = static_cast<int>(n_ + r);
      row_of_[n_ + r] = static_cast<int>(r);
      value_[n_ + r] = abs(residual(r));
    }
  }

  // Minimizes the phase objective; returns false on unboundedness.
  bool run(const std::vector<Rat>& obj_cost) {
    obj_.assign(cols_, Rat(0));
    for (Index j = 0; j < cols_; ++j) {
      obj_[j] = obj_cost[j];
      // subtract c_B^T * column expressed in the current basis
    }
    // Reduced costs from scratch: obj_j = c_j - sum_r c_basic(r) * W(r,j).
    for (Index r = 0; r < m_; ++r) {
      const Rat& cb = obj_cost[static_cast<Index>(basic_in_row_[r])];
      if (cb == 0) continue;
      for (Index j = 0; j < cols_; ++j)
        if (row_of_[j] < 0 && work_(r, j) != 0) obj_[j] -= cb * work_(r, j);
    }
    for (Index j = 0; j < cols_; ++j)
      if (row_of_[j] >= 0) obj_[j] = 0;

    while (true) {
      recompute_basic_values();
      // Bland: smallest-index eligible entering variable.
      Index enter = -1;
      int dir = 0;
      for (Index j = 0; j < cols_; ++j) {
        if (row_of_[j] >= 0) continue;
        if (fixed(j)) continue;
        const bool can_up = !upper_[j] || value_[j] < *upper_[j];
        const bool can_down = !lower_[j] || value_[j] > *lower_[j];
        if (obj_[j] < 0 && can_up) {
          enter = j;
          dir = 1;
          break;
        }
        if (obj_[j] > 0 && can_down) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter < 0) return true;  // optimal

      // Ratio test: how far the entering variable can move.
      bool limited = false;
      Rat best_t;
      Index leave_row = -1;      // -1 with limited=true means a bound flip
      Index leave_var = cols_;   // Bland tie-break on variable index
      if (dir > 0 && upper_[enter]) {
        best_t = *upper_[enter] - value_[enter];
        limited = true;
        leave_var = enter;
      } else if (dir < 0 && lower_[enter]) {
        best_t = value_[enter] - *lower_[enter];
        limited = true;
        leave_var = enter;
      }
      for (Index r = 0; r < m_; ++r) {
        const Rat rate = -work_(r, enter) * dir;  // d value(basic_r) / dt
        if (rate == 0) continue;
        const Index bv = static_cast<Index>(basic_in_row_[r]);
        std::optional<Rat> t;
        if (rate < 0 && lower_[bv]) t = (value_[bv] - *lower_[bv]) / -rate;
        if (rate > 0 && upper_[bv]) t = (*upper_[bv] - value_[bv]) / rate;
        if (!t) continue;
        if (!limited || *t < best_t || (*t == best_t && bv < leave_var)) {
          limited = true;
          best_t = *t;
          leave_row = r;
          leave_var = bv;
        }
      }
      if (!limited) return false;  // unbounded direction

      if (leave_row < 0) {
        // Bound flip: the entering variable reaches its opposite bound.
        value_[enter] = dir > 0 ? *upper_[enter] : *lower_[enter];
        at_upper_[enter] = dir > 0;
        continue;
      }

      const Index bv = static_cast<Index>(basic_in_row_[leave_row]);
      const Rat rate = -work_(leave_row, enter) * dir;
      at_upper_[bv] = rate > 0;
      value_[bv] = at_upper_[bv] ? *upper_[bv] : *lower_[bv];
      value_[enter] += Rat(dir) * best_t;
      row_of_[bv] = -1;
      row_of_[enter] = static_cast<int>(leave_row);
      basic_in_row_[leave_row] = static_cast<int>(enter);
      pivot(leave_row, enter);
    }
  }

  void freeze_artificials() {
    for (Index j = n_; j < cols_; ++j) {
      upper_[j] = Rat(0);
      value_[j] = 0;
      at_upper_[j] = false;
    }
  }

  Rat objective_value(const std::vector<Rat>& obj_cost) {
    recompute_basic_values();
    Rat v = 0;
    for (Index j = 0; j < cols_; ++j)
      if (obj_cost[j] != 0) v += obj_cost[j] * value_[j];
    return v;
  }

  RatVec structural_values() {
    recompute_basic_values();
    RatVec x(n_);
    for (Index j = 0; j < n_; ++j) x(j) = value_[j];
    return x;
  }

  /// Row multipliers y = c_B^T B^{-1}, read off the artificial columns.
  RatVec dual_values(const std::vector<Rat>& obj_cost) const {
    RatVec y(m_);
    for (Index r = 0; r < m_; ++r)
      y(r) = artificial_sign_[r] * (obj_cost[n_ + r] - obj_[n_ + r]);
    return y;
  }

  /// Improving ray recorded when run() returned false.
  RatVec unbounded_ray() {
    recompute_basic_values();
    // Recompute the entering choice that failed; deterministic, so this
    // revisits the same variable.
    for (Index j = 0; j < cols_; ++j) {
      if (row_of_[j] >= 0 || fixed(j)) continue;
      const bool can_up = !upper_[j] || value_[j] < *upper_[j];
      const bool can_down = !lower_[j] || value_[j] > *lower_[j];
      int dir = 0;
      if (obj_[j] < 0 && can_up)
        dir = 1;
      else if (obj_[j] > 0 && can_down)
        dir = -1;
      else
        continue;
      RatVec ray = RatVec::Zero(n_);
      if (j < n_) ray(j) = dir;
      for (Index r = 0; r < m_; ++r) {
        const Index bv = static_cast<Index>(basic_in_row_[r]);
        if (bv < n_) ray(bv) = -work_(r, j) * dir;
      }
      return ray;
    }
    throw InternalError("unbounded ray requested at an optimal tableau");
  }

  Index num_structural() const { return n_; }

  std::vector<Rat> phase1_cost() const {
    std::vector<Rat> c(cols_, Rat(0));
    for (Index j = n_; j < cols_; ++j) c[j] = 1;
    return c;
  }

  std::vector<Rat> phase2_cost() const {
    std::vector<Rat> c(cols_, Rat(0));
    for (Index j = 0; j < n_; ++j) c[j] = cost_(j);
    return c;
  }

 private:
  bool fixed(Index j) const { return lower_[j] && upper_[j] && *lower_[j] == *upper_[j]; }

  void pivot(Index row, Index col) {
    const Rat inv = 1 / work_(row, col);
    if (inv != 1) {
      for (Index j = 0; j < cols_; ++j) work_(row, j) *= inv;
      rhs_(row) *= inv;
    }
    for (Index r = 0; r < m_; ++r) {
      if (r == row || work_(r, col) == 0) continue;
      const Rat f = work_(r, col);
      for (Index j = 0; j < cols_; ++j)
        if (work_(row, j) != 0) work_(r, j) -= f * work_(row, j);
      rhs_(r) -= f * rhs_(row);
      work_(r, col) = 0;
    }
    if (obj_[col] != 0) {
      const Rat f = obj_[col];
      for (Index j = 0; j < cols_; ++j)
        if (work_(row, j) != 0) obj_[j] -= f * work_(row, j);
      obj_[col] = 0;
    }
  }

  void recompute_basic_values() {
    for (Index r = 0; r < m_; ++r) {
      Rat v = rhs_(r);
      for (Index j = 0; j < cols_; ++j)
        if (row_of_[j] < 0 && work_(r, j) != 0 && value_[j] != 0)
          v -= work_(r, j) * value_[j];
      value_[static_cast<Index>(basic_in_row_[r])] = v;
    }
  }

  Index m_, n_, cols_;
  const FeasibilityProblem& p_;
  RatVec cost_;
  RatMat work_;
  RatVec rhs_;
  std::vector<std::optional<Rat>> lower_, upper_;
  std::vector<Rat> value_;
  std::vector<Rat> obj_;
  std::vector<Rat> artificial_sign_;
  std::vector<bool> at_upper_;
  std::vector<int> basic_in_row_;
  std::vector<int> row_of_;
};

FarkasCertificate extract_farkas(const FeasibilityProblem& p, Tableau& t,
                                 const std::vector<Rat>& phase1) {
  FarkasCertificate cert;
  cert.y = t.dual_values(phase1);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const RatVec g = p.equalities.transpose() * cert.y;
    bool finite = true;
    Rat box_sup = 0;
    for (Index j = 0; j < p.num_vars() && finite; ++j) {
      if (g(j) > 0) {
        if (p.upper[j])
          box_sup += g(j) * *p.upper[j];
        else
          finite = false;
      } else if (g(j) < 0) {
        if (p.lower[j])
          box_sup += g(j) * *p.lower[j];
        else
          finite = false;
      }
    }
    if (finite) {
      cert.box_sup = box_sup;
      cert.rhs_value = cert.y.dot(p.rhs);
      if (cert.box_sup < cert.rhs_value) return cert;
    }
    cert.y = -cert.y;
  }
  throw InternalError("phase-1 dual did not yield a valid infeasibility certificate");
}

}  // namespace

LpResult lp_minimize(const RatVec& cost, const FeasibilityProblem& p) {
  p.validate();
  if (cost.size() != p.num_vars())
    throw DimensionMismatch("cost length does not match variable count");

  LpResult out;
  for (Index j = 0; j < p.num_vars(); ++j) {
    if (p.lower[j] && p.upper[j] && *p.lower[j] > *p.upper[j]) {
      out.status = LpStatus::Infeasible;
      out.inconsistent_bound = j;
      return out;
    }
  }

  Tableau t(cost, p);
  const auto phase1 = t.phase1_cost();
  if (!t.run(phase1)) throw InternalError("phase-1 objective cannot be unbounded");
  if (t.objective_value(phase1) > 0) {
    out.status = LpStatus::Infeasible;
    out.infeasibility = extract_farkas(p, t, phase1);
    return out;
  }

  t.freeze_artificials();
  const auto phase2 = t.phase2_cost();
  if (!t.run(phase2)) {
    out.status = LpStatus::Unbounded;
    out.witness = t.structural_values();
    out.ray = t.unbounded_ray();
    if (!p.satisfied_by(out.witness)) throw InternalError("unbounded base point infeasible");
    if (!is_zero(p.equalities * out.ray) || cost.dot(out.ray) >= 0)
      throw InternalError("invalid unbounded ray");
    return out;
  }

  out.status = LpStatus::Optimal;
  out.witness = t.structural_values();
  out.value = cost.dot(out.witness);
  if (!p.satisfied_by(out.witness))
    throw InternalError("optimal witness fails exact re-substitution");

  DualCertificate cert;
  cert.y = t.dual_values(phase2);
  cert.reduced_costs = cost - p.equalities.transpose() * cert.y;
  cert.bound = cert.y.dot(p.rhs);
  for (Index j = 0; j < p.num_vars(); ++j) {
    if (cert.reduced_costs(j) > 0)
      cert.bound += cert.reduced_costs(j) * *p.lower[j];
    else if (cert.reduced_costs(j) < 0)
      cert.bound += cert.reduced_costs(j) * *p.upper[j];
  }
  if (cert.bound != out.value || !dual_bound_valid(p, cost, cert))
    throw InternalError("optimality certificate failed verification");
  out.optimality = std::move(cert);
  return out;
}

FeasibilityResult lp_feasible(const FeasibilityProblem& p) {
  const LpResult r = lp_minimize(RatVec::Zero(p.num_vars()), p);
  FeasibilityResult out;
  out.inconsistent_bound = r.inconsistent_bound;
  if (r.status == LpStatus::Infeasible) {
    out.feasible = false;
    out.certificate = r.infeasibility;
    return out;
  }
  out.feasible = true;
  out.witness = r.witness;
  return out;
}

Rat minimize_linear_over_max(const std::vector<AffineTerm>& terms,
                             const std::vector<std::optional<Rat>>& lower,
                             const std::vector<std::optional<Rat>>& upper) {
  if (terms.empty()) throw PreconditionViolated("need at least one affine term");
  const Index n = terms.front().coeffs.size();
  for (const auto& t : terms)
    if (t.coeffs.size() != n) throw DimensionMismatch("affine terms of unequal arity");

  // Variables: x_1..x_n, t, then one slack per inequality.
  //   term_k(x) - t + s_k  = 0      (term_k <= t)
  //  -term_k(x) - t + s'_k = 0      (-term_k <= t)
  const Index k = static_cast<Index>(terms.size());
  const Index cols = n + 1 + 2 * k;
  RatMat a = RatMat::Zero(2 * k, cols);
  RatVec b(2 * k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < n; ++j) {
      a(2 * i, j) = terms[i].coeffs(j);
      a(2 * i + 1, j) = -terms[i].coeffs(j);
    }
    a(2 * i, n) = -1;
    a(2 * i + 1, n) = -1;
    a(2 * i, n + 1 + 2 * i) = 1;
    a(2 * i + 1, n + 1 + 2 * i + 1) = 1;
    b(2 * i) = -terms[i].constant;
    b(2 * i + 1) = terms[i].constant;
  }

  FeasibilityProblem p;
  p.equalities = std::move(a);
  p.rhs = std::move(b);
  p.lower.resize(cols);
  p.upper.resize(cols);
  for (Index j = 0; j < n; ++j) {
    p.lower[j] = lower[j];
    p.upper[j] = upper[j];
  }
  p.lower[n] = Rat(0);  // max of absolute values is nonnegative
  for (Index j = n + 1; j < cols; ++j) p.lower[j] = Rat(0);

  RatVec cost = RatVec::Zero(cols);
  cost(n) = 1;
  const LpResult r = lp_minimize(cost, p);
  if (r.status == LpStatus::Unbounded) throw UnboundedError("epigraph LP unbounded");
  if (r.status == LpStatus::Infeasible)
    throw InternalError("epigraph LP cannot be infeasible");
  return r.value;
}

Rat minimize_linear_over_max(const std::vector<AffineTerm>& terms, Index num_vars) {
  std::vector<std::optional<Rat>> free_bounds(num_vars);
  return minimize_linear_over_max(terms, free_bounds, free_bounds);
}

}  // namespace latlim
