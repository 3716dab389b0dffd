#include "arrzeta/lp.hpp"

#include <optional>
#include <stdexcept>

namespace arrzeta {

namespace {

struct Tableau {
  std::vector<RationalVector> rows;  // each row: columns..., rhs
  std::vector<std::size_t> basis;
  std::size_t cols = 0;
  std::size_t pivots = 0;

  void pivot(std::size_t r, std::size_t c) {
    RationalVector& pr = rows[r];
    const Rational inv = Rational(1) / pr[c];
    for (auto& x : pr)
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!pr[j].is_zero()) rows[i][j] -= f * pr[j];
    }
    basis[r] = c;
    ++pivots;
  }

  // Maximizes cost over the allowed columns; false if unbounded.
  bool optimize(const RationalVector& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols && !enter; ++j) {
        if (!allowed[j]) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (!rows[i][j].is_zero()) rc -= cost[basis[i]] * rows[i][j];
        if (rc.sign() > 0) enter = j;
      }
      if (!enter) return true;
      const std::size_t c = *enter;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][c].sign() <= 0) continue;
        Rational ratio = rows[i][cols] / rows[i][c];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, c);
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n || (!lp.free.empty() && lp.free.size() != n) ||
      lp.a_ub.size() != lp.b_ub.size() || lp.a_eq.size() != lp.b_eq.size())
    throw std::invalid_argument("inconsistent linear program shape");

  // Column layout: split variables, then one slack per inequality, then artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (!lp.free.empty() && lp.free[j]) neg_col[j] = cols++;
  }
  const std::size_t first_slack = cols;
  cols += lp.a_ub.size();
  const std::size_t m = lp.a_ub.size() + lp.a_eq.size();

  std::vector<RationalVector> rows;
  std::vector<std::optional<std::size_t>> start_basis;
  auto add_row = [&](const RationalVector& a, Rational rhs, std::optional<std::size_t> slack) {
    if (a.size() != n) throw std::invalid_argument("constraint length mismatch");
    RationalVector row(cols);
    for (std::size_t j = 0; j < n; ++j) {
      row[pos_col[j]] = a[j];
      if (neg_col[j] != SIZE_MAX) row[neg_col[j]] = -a[j];
    }
    if (slack) row[*slack] = 1;
    if (rhs.sign() < 0) {
      for (auto& x : row) x = -x;
      rhs = -rhs;
      slack.reset();
    }
    row.push_back(rhs);
    rows.push_back(std::move(row));
    start_basis.push_back(slack);
  };
  for (std::size_t i = 0; i < lp.a_ub.size(); ++i) add_row(lp.a_ub[i], lp.b_ub[i], first_slack + i);
  for (std::size_t i = 0; i < lp.a_eq.size(); ++i) add_row(lp.a_eq[i], lp.b_eq[i], std::nullopt);

  // Artificial columns for rows lacking a unit slack.
  const std::size_t first_art = cols;
  std::size_t total = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (!start_basis[i]) start_basis[i] = total++;
  Tableau t;
  t.cols = total;
  for (std::size_t i = 0; i < m; ++i) {
    RationalVector row(total + 1);
    for (std::size_t j = 0; j < cols; ++j) row[j] = rows[i][j];
    row[total] = rows[i][cols];
    if (*start_basis[i] >= first_art) row[*start_basis[i]] = 1;
    t.rows.push_back(std::move(row));
    t.basis.push_back(*start_basis[i]);
  }

  LpSolution sol;
  std::vector<bool> allowed(total, true);
  if (total > first_art) {
    RationalVector phase1(total);
    for (std::size_t j = first_art; j < total; ++j) phase1[j] = -1;
    t.optimize(phase1, allowed);
    Rational infeas;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      if (t.basis[i] >= first_art) infeas += t.rows[i][total];
    if (infeas.sign() > 0) {
      sol.status = LpStatus::infeasible;
      sol.pivots = t.pivots;
      return sol;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::optional<std::size_t> c;
      for (std::size_t j = 0; j < first_art && !c; ++j)
        if (!t.rows[i][j].is_zero()) c = j;
      if (c) {
        t.pivot(i, *c);
        ++i;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = first_art; j < total; ++j) allowed[j] = false;
  }

  RationalVector cost(total);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -lp.objective[j];
  }
  if (!t.optimize(cost, allowed)) {
    sol.status = LpStatus::unbounded;
    sol.pivots = t.pivots;
    return sol;
  }
  RationalVector y(total);
  for (std::size_t i = 0; i < t.rows.size(); ++i) y[t.basis[i]] = t.rows[i][total];
  sol.x.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = y[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) sol.x[j] -= y[neg_col[j]];
    sol.objective += lp.objective[j] * sol.x[j];
  }
  sol.status = LpStatus::optimal;
  sol.pivots = t.pivots;
  return sol;
}

}  // namespace arrzeta
