#include "hkfs/rat.hpp"

#include <cctype>

#include "hkfs/error.hpp"

namespace hkfs {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  s = strip(s);
  std::string digits(s);
  std::size_t start = (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) ? 1 : 0;
  if (digits.size() == start) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
  }
  if (digits[0] == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(text, text));
  const mpz_class n = parse_integer(text.substr(0, slash), text);
  const mpz_class d = parse_integer(text.substr(slash + 1), text);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rat(n, d);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rat(v_.get_den(), v_.get_num());
}

Rat Rat::pow(unsigned long e) const {
  mpz_class n;
  mpz_class d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  Rat r;
  r.v_ = mpq_class(n, d);  // already coprime
  return r;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

mpz_class ipow(unsigned long p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

}  // namespace hkfs
