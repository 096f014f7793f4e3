#include "lbs/simplex.hpp"

#include <algorithm>

#include "lbs/errors.hpp"

namespace lbs {

namespace {

// Tableau over columns [structural | slack | artificial | rhs]. Basic
// feasible throughout; pivoting follows Bland's rule, so cycling is
// impossible and exact arithmetic keeps every comparison sharp.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b)
      : m_(static_cast<int>(a.size())),
        n_(m_ ? static_cast<int>(a[0].size()) : 0) {
    for (int i = 0; i < m_; ++i) artificial_rows_.push_back(b[i] < 0);
    n_artificial_ = static_cast<int>(
        std::count(artificial_rows_.begin(), artificial_rows_.end(), true));
    cols_ = n_ + m_ + n_artificial_;
    rows_.assign(m_, std::vector<Rat>(cols_ + 1, Rat(0)));
    basis_.assign(m_, -1);

    int art = 0;
    for (int i = 0; i < m_; ++i) {
      Rat sign = artificial_rows_[i] ? Rat(-1) : Rat(1);
      for (int j = 0; j < n_; ++j) rows_[i][j] = sign * a[i][j];
      rows_[i][n_ + i] = sign;  // slack
      rows_[i][cols_] = sign * b[i];
      if (artificial_rows_[i]) {
        basis_[i] = n_ + m_ + art;
        rows_[i][n_ + m_ + art] = 1;
        ++art;
      } else {
        basis_[i] = n_ + i;
      }
    }
  }

  // Runs simplex for the given objective (maximize cost*vars). Columns at
  // or past `col_limit` never enter the basis. Returns false on
  // unboundedness. Pricing is steepest-coefficient until a long degenerate
  // stall, then Bland's rule, which cannot cycle.
  bool optimize(const std::vector<Rat>& cost, int col_limit) {
    std::vector<Rat> reduced(col_limit, Rat(0));
    bool bland = false;
    int stall = 0;
    const int stall_limit = 2 * (m_ + col_limit) + 16;
    while (true) {
      price_out(cost, col_limit, reduced);
      int entering = -1;
      if (bland) {
        for (int j = 0; j < col_limit; ++j) {
          if (reduced[j] > 0) {
            entering = j;
            break;
          }
        }
      } else {
        for (int j = 0; j < col_limit; ++j)
          if (reduced[j] > 0 &&
              (entering < 0 || reduced[j] > reduced[entering]))
            entering = j;
      }
      if (entering < 0) return true;
      int leaving = -1;
      Rat best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (rows_[i][entering] <= 0) continue;
        Rat ratio = rows_[i][cols_] / rows_[i][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      bool degenerate = rows_[leaving][cols_] == 0;
      pivot(leaving, entering);
      if (degenerate) {
        if (!bland && ++stall > stall_limit) bland = true;
      } else {
        stall = 0;
      }
    }
  }

  Rat basic_value(int var) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == var) return rows_[i][cols_];
    return Rat(0);
  }

  // Phase one: minimize the artificial sum; infeasible iff positive at the
  // optimum. Afterwards drives leftover artificials out of the basis.
  bool phase_one() {
    if (n_artificial_ == 0) return true;
    std::vector<Rat> cost(n_ + m_ + n_artificial_, Rat(0));
    for (int j = n_ + m_; j < n_ + m_ + n_artificial_; ++j) cost[j] = -1;
    optimize(cost, n_ + m_ + n_artificial_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_ + m_ && rows_[i][cols_] != 0) return false;

    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      int target = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (rows_[i][j] != 0) {
          target = j;
          break;
        }
      }
      if (target >= 0) {
        pivot(i, target);
      } else {
        drop_row(i);
        --i;
      }
    }
    return true;
  }

  int n() const { return n_; }
  int n_real_cols() const { return n_ + m_; }

 private:
  void price_out(const std::vector<Rat>& cost, int col_limit,
                 std::vector<Rat>& reduced) const {
    for (int j = 0; j < col_limit; ++j) reduced[j] = cost[j];
    for (int i = 0; i < m_; ++i) {
      const Rat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < col_limit; ++j)
        if (rows_[i][j] != 0) reduced[j] -= cb * rows_[i][j];
    }
  }

  void pivot(int row, int col) {
    Rat inv = rows_[row][col];
    for (Rat& v : rows_[row]) v /= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      Rat factor = rows_[i][col];
      for (int j = 0; j <= cols_; ++j)
        if (rows_[row][j] != 0) rows_[i][j] -= factor * rows_[row][j];
    }
    basis_[row] = col;
  }

  void drop_row(int row) {
    rows_.erase(rows_.begin() + row);
    basis_.erase(basis_.begin() + row);
    --m_;
  }

  int m_;
  int n_;
  int cols_ = 0;
  int n_artificial_ = 0;
  std::vector<bool> artificial_rows_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<int> basis_;
};

}  // namespace

SimplexResult simplex_max(const std::vector<std::vector<Rat>>& a,
                          const std::vector<Rat>& b,
                          const std::vector<Rat>& c) {
  if (a.size() != b.size()) throw InputError("simplex: |A| != |b|");
  for (const auto& row : a)
    if (row.size() != c.size()) throw InputError("simplex: ragged row");

  SimplexResult result;
  result.x.assign(c.size(), Rat(0));
  if (a.empty()) {
    // Only x >= 0 remains; bounded iff no positive objective coefficient.
    for (const Rat& cj : c) {
      if (cj > 0) {
        result.status = LpStatus::unbounded;
        return result;
      }
    }
    result.objective = 0;
    return result;
  }

  Tableau t(a, b);
  if (!t.phase_one()) {
    result.status = LpStatus::infeasible;
    return result;
  }
  std::vector<Rat> cost(t.n_real_cols(), Rat(0));
  for (std::size_t j = 0; j < c.size(); ++j) cost[j] = c[j];
  if (!t.optimize(cost, t.n_real_cols())) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.objective = 0;
  for (int j = 0; j < t.n(); ++j) {
    result.x[j] = t.basic_value(j);
    result.objective += c[j] * result.x[j];
  }
  return result;
}

SimplexResult simplex_min_cover(const std::vector<std::vector<Rat>>& a,
                                const std::vector<Rat>& b) {
  std::vector<std::vector<Rat>> neg = a;
  for (auto& row : neg)
    for (Rat& v : row) v = -v;
  std::vector<Rat> nb = b;
  for (Rat& v : nb) v = -v;
  std::size_t n = a.empty() ? 0 : a[0].size();
  std::vector<Rat> c(n, Rat(-1));
  SimplexResult r = simplex_max(neg, nb, c);
  if (r.status == LpStatus::optimal) r.objective = -r.objective;
  return r;
}

}  // namespace lbs
