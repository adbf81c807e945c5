#pragma once

#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

namespace hkfs {

enum class Exec { serial, parallel };

/// Dense F_2 matrix, rows packed 64 columns per word.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }

  void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= std::uint64_t{1} << (c % 64); }
  void flip(std::size_t r, std::size_t c) { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const { return ((row(r)[c / 64] >> (c % 64)) & 1U) != 0; }

  std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

/// Dense F_p matrix with entries in [0, p). Use uint8_t for p <= 251.
template <typename T>
class ModpMatrix {
  static_assert(std::is_same_v<T, std::uint8_t> || std::is_same_v<T, std::uint32_t>);

 public:
  ModpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t p() const { return p_; }

  T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  T at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T* row(std::size_t r) { return data_.data() + r * cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t p_;
  std::vector<T> data_;
};

// Reference elimination kernels. The matrix is consumed.
std::size_t rank_gf2_serial(Gf2Matrix m);
template <typename T>
std::size_t rank_modp_serial(ModpMatrix<T> m);

// OpenMP kernels: the row updates below each pivot run in parallel.
std::size_t rank_gf2_parallel(Gf2Matrix m);
template <typename T>
std::size_t rank_modp_parallel(ModpMatrix<T> m);

inline std::size_t rank_gf2(Gf2Matrix m, Exec exec) {
  return exec == Exec::parallel ? rank_gf2_parallel(std::move(m)) : rank_gf2_serial(std::move(m));
}

template <typename T>
std::size_t rank_modp(ModpMatrix<T> m, Exec exec) {
  return exec == Exec::parallel ? rank_modp_parallel(std::move(m)) : rank_modp_serial(std::move(m));
}

/// Inverse of a in F_p, a != 0.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

}  // namespace hkfs
