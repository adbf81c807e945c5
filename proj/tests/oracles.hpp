// Brute-force reference computations used to check the library. Nothing here
// calls into the code under test except for reading FpPoly terms.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hkfs/fp_poly.hpp"
#include "hkfs/rat.hpp"

namespace oracle {

using Mono = std::vector<std::uint32_t>;
using Poly = std::map<Mono, std::int64_t>;  // coefficients in [0, p)

inline Poly from_fp(const hkfs::FpPoly& f) {
  Poly out;
  for (const auto& [e, c] : f.terms()) out[e] = c;
  return out;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint32_t p, std::uint64_t q) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Mono e(ea.size());
      bool keep = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (e[i] >= q) keep = false;
      }
      if (!keep) continue;
      auto& slot = out[e];
      slot = (slot + ca * cb) % p;
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

// f^a mod (x_i^q) by a multiplications, no Frobenius shortcut.
inline Poly pow(const Poly& f, std::size_t s, std::uint64_t a, std::uint32_t p, std::uint64_t q) {
  Poly acc{{Mono(s, 0), 1}};
  for (std::uint64_t i = 0; i < a && !acc.empty(); ++i) acc = mul(acc, f, p, q);
  return acc;
}

inline std::vector<Mono> box(std::size_t s, std::uint64_t q) {
  std::vector<Mono> out;
  Mono e(s, 0);
  while (true) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < s && ++e[i] == q) e[i++] = 0;
    if (i == s) break;
  }
  return out;
}

// Rank mod p of an integer matrix by textbook elimination.
inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> m, std::uint32_t p) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  auto inv = [p](std::int64_t a) {
    std::int64_t r = 1, b = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const std::int64_t iv = inv(((m[r][c] % p) + p) % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] % p == 0) continue;
      const std::int64_t k = (m[i][c] % p + p) % p * iv % p;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - k * m[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Rank of b -> g b on F_p[x]/(x_i^q) from the full dense matrix.
inline std::size_t mult_rank(const Poly& g, std::size_t s, std::uint32_t p, std::uint64_t q) {
  const auto basis = box(s, q);
  std::map<Mono, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<std::vector<std::int64_t>> m(basis.size(), std::vector<std::int64_t>(basis.size(), 0));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Poly img = mul(g, Poly{{basis[col], 1}}, p, q);
    for (const auto& [e, c] : img) m[index.at(e)][col] = c;
  }
  return rank_mod(std::move(m), p);
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::uint64_t colength(const hkfs::FpPoly& f, std::uint64_t a, unsigned n) {
  const std::uint64_t q = ipow(f.p(), n);
  const std::size_t s = f.num_vars();
  const Poly g = pow(from_fp(f), s, a, f.p(), q);
  return ipow(q, static_cast<unsigned>(s)) - mult_rank(g, s, f.p(), q);
}

// Standard monomials of (x_i^q, m_1, ..., m_k) for monomials m_j.
inline std::uint64_t count_standard(std::size_t s, std::uint64_t q, const std::vector<Mono>& gens) {
  std::uint64_t count = 0;
  for (const auto& e : box(s, q)) {
    bool in_ideal = false;
    for (const auto& g : gens) {
      bool divides = true;
      for (std::size_t i = 0; i < s; ++i) divides = divides && g[i] <= e[i];
      in_ideal = in_ideal || divides;
    }
    if (!in_ideal) ++count;
  }
  return count;
}

// Random polynomial in the maximal ideal.
inline hkfs::FpPoly random_poly(std::mt19937_64& rng, std::uint32_t p, std::size_t s, unsigned max_deg,
                                unsigned max_terms) {
  hkfs::FpPoly f(p, s);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<std::int64_t> coef(1, p - 1);
  std::uniform_int_distribution<unsigned> nterms(1, max_terms);
  while (f.is_zero()) {
    const unsigned k = nterms(rng);
    for (unsigned t = 0; t < k; ++t) {
      hkfs::Exponent e(s);
      unsigned total = 0;
      for (auto& x : e) total += (x = deg(rng));
      if (total == 0) e[0] = 1;
      f.add_term(e, coef(rng));
    }
  }
  return f;
}

inline hkfs::Rat random_rat(std::mt19937_64& rng, int num_bound = 9, int den_bound = 4) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound), den(1, den_bound);
  return hkfs::Rat(hkfs::Rat(num(rng)) / hkfs::Rat(den(rng)));
}

}  // namespace oracle
