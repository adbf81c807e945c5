#include "hkfs/colength.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hkfs/error.hpp"

namespace hkfs {

TruncatedAlgebra::TruncatedAlgebra(std::uint32_t p, std::size_t s, unsigned n, std::uint64_t budget)
    : p_(p), s_(s), n_(n), q_(1), dim_(1) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (s == 0) throw DomainError("truncated algebra needs at least one variable");
  const std::uint64_t cap = std::min<std::uint64_t>(budget, UINT32_MAX);
  const auto over = [&] {
    return BudgetError("dimension " + std::to_string(p) + "^(" + std::to_string(s) + "*" + std::to_string(n) +
                       ") exceeds the budget of " + std::to_string(budget));
  };
  for (unsigned i = 0; i < n; ++i) {
    if (q_ > cap / p) throw over();
    q_ *= p;
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (dim_ > cap / q_) throw over();
    dim_ *= q_;
  }

  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed(dim_);
  for (std::uint64_t code = 0; code < dim_; ++code) {
    std::uint64_t rest = code;
    std::uint64_t degree = 0;
    std::uint64_t lex = 0;  // e_1 most significant
    for (std::size_t i = 0; i < s_; ++i) {
      const std::uint64_t e = rest % q_;
      rest /= q_;
      degree += e;
      lex = lex * q_ + e;
    }
    // lex was accumulated from e_1 upward, so e_1 is already the most significant digit.
    keyed[code] = {degree * dim_ + lex, static_cast<std::uint32_t>(code)};
  }
  std::sort(keyed.begin(), keyed.end());
  grlex_.resize(dim_);
  position_.resize(dim_);
  for (std::uint64_t pos = 0; pos < dim_; ++pos) {
    grlex_[pos] = keyed[pos].second;
    position_[keyed[pos].second] = static_cast<std::uint32_t>(pos);
  }
}

Exponent TruncatedAlgebra::monomial(std::size_t pos) const {
  std::uint64_t code = grlex_.at(pos);
  Exponent e(s_);
  for (std::size_t i = 0; i < s_; ++i) {
    e[i] = static_cast<std::uint32_t>(code % q_);
    code /= q_;
  }
  return e;
}

std::uint64_t TruncatedAlgebra::code(const Exponent& e) const {
  if (e.size() != s_) throw DomainError("exponent vector length does not match the algebra");
  std::uint64_t c = 0;
  for (std::size_t i = s_; i-- > 0;) {
    if (e[i] >= q_) throw DomainError("monomial lies outside the truncated algebra");
    c = c * q_ + e[i];
  }
  return c;
}

std::size_t TruncatedAlgebra::position(const Exponent& e) const { return position_[code(e)]; }

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Term {
  Exponent e;
  std::uint64_t offset;  // code of e
  std::uint32_t coef;
};

struct Block {
  std::vector<std::uint32_t> columns;  // codes, graded-lex order
  std::uint32_t rows = 0;
};

// Block matrix: one matrix row per column monomial b, holding the image g*b.
template <typename Matrix, typename Set>
Matrix build_block(const Block& blk, const std::vector<Term>& terms, const TruncatedAlgebra& alg,
                   const std::vector<std::uint32_t>& local_row, Matrix m, Set set) {
  const std::size_t s = alg.s();
  const std::uint64_t q = alg.q();
  Exponent b(s);
  for (std::size_t i = 0; i < blk.columns.size(); ++i) {
    std::uint64_t rest = blk.columns[i];
    for (std::size_t k = 0; k < s; ++k) {
      b[k] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    for (const auto& t : terms) {
      bool inside = true;
      for (std::size_t k = 0; k < s; ++k) {
        if (b[k] + t.e[k] >= q) {
          inside = false;
          break;
        }
      }
      if (inside) set(m, i, local_row[blk.columns[i] + t.offset], t.coef);
    }
  }
  return m;
}

std::size_t block_rank(const Block& blk, const std::vector<Term>& terms, const TruncatedAlgebra& alg,
                       const std::vector<std::uint32_t>& local_row, Exec exec) {
  const std::size_t nc = blk.columns.size();
  const std::size_t nr = blk.rows;
  const std::uint32_t p = alg.p();
  if (p == 2) {
    auto m = build_block(blk, terms, alg, local_row, Gf2Matrix(nc, nr),
                         [](Gf2Matrix& mm, std::size_t r, std::size_t c, std::uint32_t) { mm.set(r, c); });
    return rank_gf2(std::move(m), exec);
  }
  if (p <= 251) {
    using M8 = ModpMatrix<std::uint8_t>;
    auto m = build_block(blk, terms, alg, local_row, M8(nc, nr, p),
                         [](M8& mm, std::size_t r, std::size_t c, std::uint32_t v) {
                           mm.at(r, c) = static_cast<std::uint8_t>(v);
                         });
    return rank_modp(std::move(m), exec);
  }
  using M32 = ModpMatrix<std::uint32_t>;
  auto m = build_block(blk, terms, alg, local_row, M32(nc, nr, p),
                       [](M32& mm, std::size_t r, std::size_t c, std::uint32_t v) { mm.at(r, c) = v; });
  return rank_modp(std::move(m), exec);
}

// Blocks with more entries than this are eliminated one at a time with the
// parallel kernel; smaller ones are spread across threads.
constexpr std::size_t kLargeBlockEntries = std::size_t{1} << 22;

}  // namespace

std::uint64_t mult_rank(const FpPoly& g, const TruncatedAlgebra& alg, Exec exec) {
  if (g.p() != alg.p() || g.num_vars() != alg.s()) {
    throw DomainError("polynomial and truncated algebra disagree on characteristic or variables");
  }
  const std::uint64_t q = alg.q();
  const std::uint64_t dim = alg.dim();
  const std::size_t s = alg.s();

  std::vector<Term> terms;
  for (const auto& [e, c] : g.terms()) {
    terms.push_back({e, alg.code(e), c});  // code() rejects untruncated input
  }
  if (terms.empty()) return 0;

  // Pass 1: connect each column b with each of its image rows b + e.
  UnionFind uf(2 * dim);
  std::vector<char> col_active(dim, 0);
  std::vector<char> row_active(dim, 0);
  std::vector<std::uint64_t> extent(s);
  std::vector<std::uint32_t> digit(s);
  for (const auto& t : terms) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < s; ++k) {
      extent[k] = q - t.e[k];
      count *= extent[k];
    }
    std::fill(digit.begin(), digit.end(), 0);
    std::uint64_t b = 0;
    for (std::uint64_t it = 0; it < count; ++it) {
      col_active[b] = 1;
      row_active[b + t.offset] = 1;
      uf.unite(static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(dim + b + t.offset));
      // Odometer step over the sub-box, tracking the code incrementally.
      std::uint64_t weight = 1;
      for (std::size_t k = 0; k < s; ++k) {
        if (++digit[k] < extent[k]) {
          b += weight;
          break;
        }
        b -= weight * (digit[k] - 1);
        digit[k] = 0;
        weight *= q;
      }
    }
  }

  // Pass 2: number blocks and local indices in graded-lex order.
  std::vector<std::int64_t> block_of_root(2 * dim, -1);
  std::vector<Block> blocks;
  std::vector<std::uint32_t> local_row(dim, 0);
  for (const std::uint32_t c : alg.grlex_codes()) {
    if (col_active[c] != 0) {
      const std::uint32_t root = uf.find(c);
      if (block_of_root[root] < 0) {
        block_of_root[root] = static_cast<std::int64_t>(blocks.size());
        blocks.emplace_back();
      }
      blocks[static_cast<std::size_t>(block_of_root[root])].columns.push_back(c);
    }
  }
  for (const std::uint32_t c : alg.grlex_codes()) {
    if (row_active[c] != 0) {
      const std::uint32_t root = uf.find(static_cast<std::uint32_t>(dim + c));
      Block& blk = blocks.at(static_cast<std::size_t>(block_of_root[root]));
      local_row[c] = blk.rows++;
    }
  }

  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t entries = blocks[i].columns.size() * blocks[i].rows;
    (exec == Exec::parallel && entries > kLargeBlockEntries ? large : small).push_back(i);
  }

  std::uint64_t total = 0;
  const auto nsmall = static_cast<std::int64_t>(small.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : total) if (exec == Exec::parallel && nsmall > 1)
  for (std::int64_t i = 0; i < nsmall; ++i) {
    total += block_rank(blocks[small[static_cast<std::size_t>(i)]], terms, alg, local_row, Exec::serial);
  }
  for (const std::size_t i : large) total += block_rank(blocks[i], terms, alg, local_row, Exec::parallel);
  return total;
}

std::uint64_t colength(const FpPoly& f, std::uint64_t a, unsigned n, std::uint64_t budget, Exec exec) {
  if (f.is_zero()) throw DomainError("f = 0 is not a hypersurface");
  if (f.has_constant_term()) throw DomainError("f has a nonzero constant term (not in the maximal ideal)");
  const TruncatedAlgebra alg(f.p(), f.num_vars(), n, budget);
  const FpPoly g = power_mod(f, a, alg.q());
  return alg.dim() - mult_rank(g, alg, exec);
}

}  // namespace hkfs
