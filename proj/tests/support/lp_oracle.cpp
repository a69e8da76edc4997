#include "support/lp_oracle.hpp"

#include <stdexcept>

namespace zerocurv::testing {

namespace {

using Row = std::vector<Rational>;

// tableau rows: [coefficients | rhs]; basis[i] is the basic column of row i
struct Tableau {
  std::vector<Row> rows;
  std::vector<int> basis;
  int ncols = 0;

  void pivot(int r, int col) {
    Rational p = rows[r][col];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r || sgn(rows[i][col]) == 0) continue;
      Rational f = rows[i][col];
      for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = col;
  }

  // minimizes cost over the columns flagged usable; false when unbounded
  bool optimize(const Row& cost, const std::vector<bool>& usable) {
    for (;;) {
      // reduced costs
      int enter = -1;
      for (int j = 0; j < ncols && enter < 0; ++j) {
        if (!usable[j]) continue;
        Rational rc = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) rc -= cost[basis[i]] * rows[i][j];
        if (sgn(rc) < 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rows[i][ncols] / rows[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult simplex_min(std::vector<std::vector<Rational>> a, std::vector<Rational> b, const std::vector<Rational>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < m; ++i) {
    if (sgn(b[i]) < 0) {
      for (auto& v : a[i]) v = -v;
      b[i] = -b[i];
    }
  }
  Tableau t;
  t.ncols = n + m;
  for (int i = 0; i < m; ++i) {
    Row r(n + m + 1, Rational(0));
    for (int j = 0; j < n; ++j) r[j] = a[i][j];
    r[n + i] = 1;
    r[n + m] = b[i];
    t.rows.push_back(std::move(r));
    t.basis.push_back(n + i);
  }
  Row phase1(n + m, Rational(0));
  for (int i = 0; i < m; ++i) phase1[n + i] = 1;
  std::vector<bool> all(n + m, true);
  t.optimize(phase1, all);
  Rational infeas = 0;
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] >= n) infeas += t.rows[i][n + m];
  }
  LpResult res;
  if (sgn(infeas) != 0) return res;
  // drive artificials out of the basis; drop redundant rows
  for (int i = 0; i < static_cast<int>(t.rows.size());) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < n && col < 0; ++j) {
      if (sgn(t.rows[i][j]) != 0) col = j;
    }
    if (col >= 0) {
      t.pivot(i, col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + i);
      t.basis.erase(t.basis.begin() + i);
    }
  }
  Row cost(n + m, Rational(0));
  for (int j = 0; j < n; ++j) cost[j] = c[j];
  std::vector<bool> original(n + m, false);
  for (int j = 0; j < n; ++j) original[j] = true;
  if (!t.optimize(cost, original)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) res.x[t.basis[i]] = t.rows[i][n + m];
  }
  res.value = 0;
  for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

bool lp_contains(const SupportSet& s, const std::array<Rational, 3>& t) {
  // variables: lambda_1..lambda_k, slack_1..slack_dim
  const int k = static_cast<int>(s.points.size());
  const int d = s.dim;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int r = 0; r < d; ++r) {
    std::vector<Rational> row(k + d, Rational(0));
    for (int i = 0; i < k; ++i) row[i] = s.points[i][r];
    row[k + r] = 1;
    a.push_back(row);
    b.push_back(t[r]);
  }
  std::vector<Rational> sum(k + d, Rational(0));
  for (int i = 0; i < k; ++i) sum[i] = 1;
  a.push_back(sum);
  b.push_back(1);
  std::vector<Rational> c(k + d, Rational(0));
  return simplex_min(a, b, c).status == LpResult::Status::Optimal;
}

Rational lp_distance(const SupportSet& s) {
  // variables: t, lambda_1..lambda_k, slack_1..slack_dim;  sum lambda_i p_i + slack = t
  const int k = static_cast<int>(s.points.size());
  const int d = s.dim;
  const int n = 1 + k + d;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int r = 0; r < d; ++r) {
    std::vector<Rational> row(n, Rational(0));
    row[0] = -1;
    for (int i = 0; i < k; ++i) row[1 + i] = s.points[i][r];
    row[1 + k + r] = 1;
    a.push_back(row);
    b.push_back(0);
  }
  std::vector<Rational> sum(n, Rational(0));
  for (int i = 0; i < k; ++i) sum[1 + i] = 1;
  a.push_back(sum);
  b.push_back(1);
  std::vector<Rational> c(n, Rational(0));
  c[0] = 1;
  auto r = simplex_min(a, b, c);
  if (r.status != LpResult::Status::Optimal) throw std::logic_error("distance LP not optimal");
  return r.value;
}

}  // namespace zerocurv::testing
