#include <omp.h>

#include <algorithm>
#include <utility>

#include "hkfs/rank_kernels.hpp"

namespace hkfs {

std::size_t rank_gf2_parallel(Gf2Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t words = m.words();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows && (m.row(piv)[w] & bit) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      std::swap_ranges(m.row(piv) + w, m.row(piv) + words, m.row(rank) + w);
    }
    const std::uint64_t* pr = m.row(rank);
    const auto first = static_cast<std::int64_t>(rank + 1);
    const auto last = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (last - first > 64)
    for (std::int64_t r = first; r < last; ++r) {
      std::uint64_t* rr = m.row(static_cast<std::size_t>(r));
      if ((rr[w] & bit) == 0) continue;
      for (std::size_t k = w; k < words; ++k) rr[k] ^= pr[k];
    }
    ++rank;
  }
  return rank;
}

template <typename T>
std::size_t rank_modp_parallel(ModpMatrix<T> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::uint64_t p = m.p();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) std::swap_ranges(m.row(piv) + c, m.row(piv) + cols, m.row(rank) + c);
    T* pr = m.row(rank);
    const std::uint64_t inv = inv_mod(pr[c], m.p());
    for (std::size_t k = c; k < cols; ++k) pr[k] = static_cast<T>(pr[k] * inv % p);
    const auto first = static_cast<std::int64_t>(rank + 1);
    const auto last = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (last - first > 64)
    for (std::int64_t r = first; r < last; ++r) {
      T* rr = m.row(static_cast<std::size_t>(r));
      if (rr[c] == 0) continue;
      const std::uint64_t f = p - rr[c];
      for (std::size_t k = c; k < cols; ++k) {
        if (pr[k] != 0) rr[k] = static_cast<T>((rr[k] + f * pr[k]) % p);
      }
    }
    ++rank;
  }
  return rank;
}

template std::size_t rank_modp_parallel(ModpMatrix<std::uint8_t>);
template std::size_t rank_modp_parallel(ModpMatrix<std::uint32_t>);

}  // namespace hkfs
