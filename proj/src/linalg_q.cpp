#include "hkfs/linalg_q.hpp"

#include <algorithm>

namespace hkfs {

bool IncrementalSolver::add(RatRow row, Rat rhs) {
  if (!consistent_) return false;
  row.resize(n_);
  for (const auto& pv : pivots_) {
    const Rat f = row[pv.col];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!pv.row[j].is_zero()) row[j] -= f * pv.row[j];
    }
    rhs -= f * pv.rhs;
  }
  std::size_t col = n_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!row[j].is_zero()) {
      col = j;
      break;
    }
  }
  if (col == n_) {
    if (!rhs.is_zero()) consistent_ = false;
    return consistent_;
  }
  const Rat inv = row[col].inverse();
  for (auto& x : row) x *= inv;
  rhs *= inv;
  pivots_.push_back({col, std::move(row), std::move(rhs)});
  return true;
}

std::optional<RatRow> IncrementalSolver::solution() const {
  if (!consistent_) return std::nullopt;
  RatRow x(n_);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Rat v = it->rhs;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != it->col && !it->row[j].is_zero()) v -= it->row[j] * x[j];
    }
    x[it->col] = v;
  }
  return x;
}

std::size_t rank(const RatMatrix& rows) {
  if (rows.empty()) return 0;
  std::size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  IncrementalSolver s(cols);
  for (const auto& r : rows) s.add(r, Rat());
  return s.rank();
}

std::optional<RatRow> solve(const RatMatrix& a, const RatRow& b) {
  std::size_t cols = 0;
  for (const auto& r : a) cols = std::max(cols, r.size());
  IncrementalSolver s(cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!s.add(a[i], b[i])) return std::nullopt;
  }
  return s.solution();
}

}  // namespace hkfs
