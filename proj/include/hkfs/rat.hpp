#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace hkfs {

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Thin value wrapper over mpq_class so that expression templates never leak
/// into `auto` and every constructor path canonicalizes.
class Rat {
 public:
  Rat() = default;

  template <std::signed_integral T>
  Rat(T v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral T>
  Rat(T v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rat(const mpz_class& n) : v_(n) {}  // NOLINT(google-explicit-constructor)

  /// Throws DomainError when den == 0.
  Rat(const mpz_class& num, const mpz_class& den);

  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "a", "-a", "a/b". Whitespace around the parts is ignored.
  static Rat parse(std::string_view text);

  /// "num/den", or "num" when den == 1.
  std::string str() const;

  const mpq_class& mpq() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat inverse() const;
  Rat pow(unsigned long e) const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  Rat operator-() const { Rat r; r.v_ = -v_; return r; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// p^e as an exact integer.
mpz_class ipow(unsigned long p, unsigned long e);

}  // namespace hkfs
