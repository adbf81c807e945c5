#pragma once

#include <optional>
#include <vector>

#include "hkfs/rat.hpp"

namespace hkfs {

using RatRow = std::vector<Rat>;
using RatMatrix = std::vector<RatRow>;

/// Row-by-row exact elimination of a linear system A x = b over Q.
///
/// Pivot k is kept reduced against pivots 0..k-1, so a new equation is
/// reduced in insertion order and inconsistency is detected as soon as it
/// appears.
class IncrementalSolver {
 public:
  explicit IncrementalSolver(std::size_t num_vars) : n_(num_vars) {}

  /// Returns false once the accumulated system is inconsistent.
  bool add(RatRow row, Rat rhs);

  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Some solution (free variables set to zero); nullopt when inconsistent.
  std::optional<RatRow> solution() const;

 private:
  struct Pivot {
    std::size_t col;
    RatRow row;
    Rat rhs;
  };
  std::size_t n_;
  std::vector<Pivot> pivots_;
  bool consistent_ = true;
};

std::size_t rank(const RatMatrix& rows);

/// Any solution of A x = b, or nullopt.
std::optional<RatRow> solve(const RatMatrix& a, const RatRow& b);

}  // namespace hkfs
