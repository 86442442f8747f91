#ifndef AMPLE_LP_HPP
#define AMPLE_LP_HPP

// Dense two-phase simplex over exact rationals with Bland's rule, for
//   A x = b, x ≥ 0, optionally maximizing c·x.
// Infeasibility comes with a Farkas vector y: yᵀA ≤ 0 and yᵀb > 0.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ample/rational.hpp"

namespace ample {

struct LinearSystem {
  std::size_t vars = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;       // a basic feasible (optimal) point
  Rational value;                // c·x when an objective was given
  std::vector<Rational> farkas;  // one multiplier per row when infeasible
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m, std::vector<Rational>(n + 1)), obj_(n + 1), basis_(m) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][n_]; }
  std::vector<Rational>& objective() { return obj_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return m_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto& v : t_[r]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    if (obj_[c] != 0) {
      const Rational f = obj_[c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (t_[r][j] != 0) obj_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Minimize with the reduced-cost row in obj_ (obj_[n] holds -value).
  // Columns at or beyond `limit` never enter. Returns false if unbounded.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        const Rational ratio = t_[i][n_] / t_[i][enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearSystem& sys, const std::optional<std::vector<Rational>>& maximize = std::nullopt) {
  const std::size_t m = sys.rows.size(), n = sys.vars;
  if (sys.rhs.size() != m) throw std::invalid_argument("rhs size does not match the rows");
  for (const auto& r : sys.rows)
    if (r.size() != n) throw std::invalid_argument("row width does not match the variable count");
  if (maximize && maximize->size() != n) throw std::invalid_argument("objective width does not match");

  // phase 1: rows scaled to b ≥ 0, one artificial per row, minimize their sum
  detail::Tableau tab(m, n + m);
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (sys.rhs[i] < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign[i] * sys.rows[i][j];
    tab.at(i, n + i) = 1;
    tab.rhs(i) = sign[i] * sys.rhs[i];
    tab.basis()[i] = n + i;
  }
  auto& obj = tab.objective();
  for (std::size_t j = n; j < n + m; ++j) obj[j] = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n + m; ++j) obj[j] -= (j == n + m ? tab.rhs(i) : tab.at(i, j));
  tab.run(n + m);

  LpResult res;
  const Rational infeasibility = -obj[n + m];
  if (infeasibility > 0) {
    // reduced cost of artificial i is 1 - y'_i
    res.status = LpStatus::infeasible;
    res.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.farkas[i] = sign[i] * (1 - obj[n + i]);
    return res;
  }

  // drive artificials out of the basis; rows where that fails are redundant
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (tab.at(i, j) != 0) col = j;
    if (col) {
      tab.pivot(i, *col);
      ++i;
    } else {
      tab.drop_row(i);
    }
  }

  res.status = LpStatus::optimal;
  if (maximize) {
    // phase 2: minimize -c·x over the original columns
    for (std::size_t j = 0; j <= n + m; ++j) obj[j] = j < n ? Rational(-(*maximize)[j]) : Rational(0);
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const Rational cb = obj[tab.basis()[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n + m; ++j) obj[j] -= cb * (j == n + m ? tab.rhs(i) : tab.at(i, j));
    }
    if (!tab.run(n)) {
      res.status = LpStatus::unbounded;
      return res;
    }
  }
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) res.x[tab.basis()[i]] = tab.rhs(i);
  if (maximize)
    for (std::size_t j = 0; j < n; ++j) res.value += (*maximize)[j] * res.x[j];
  return res;
}

/// Exact check that x ≥ 0 and A x = b.
inline bool is_feasible_point(const LinearSystem& sys, const std::vector<Rational>& x) {
  if (x.size() != sys.vars) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    Rational s;
    for (std::size_t j = 0; j < sys.vars; ++j) s += sys.rows[i][j] * x[j];
    if (s != sys.rhs[i]) return false;
  }
  return true;
}

/// Exact check that yᵀA ≤ 0 componentwise and yᵀb > 0.
inline bool is_farkas_certificate(const LinearSystem& sys, const std::vector<Rational>& y) {
  if (y.size() != sys.rows.size()) return false;
  for (std::size_t j = 0; j < sys.vars; ++j) {
    Rational s;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) s += y[i] * sys.rows[i][j];
    if (s > 0) return false;
  }
  Rational s;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) s += y[i] * sys.rhs[i];
  return s > 0;
}

}  // namespace ample

#endif
