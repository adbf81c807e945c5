#include "hkfs/fp_poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "hkfs/error.hpp"

namespace hkfs {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FpPoly::FpPoly(std::uint32_t p, std::size_t num_vars) : p_(p), s_(num_vars) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (num_vars == 0) throw DomainError("polynomial ring needs at least one variable");
}

FpPoly FpPoly::one(std::uint32_t p, std::size_t num_vars) {
  FpPoly f(p, num_vars);
  f.add_term(Exponent(num_vars, 0), 1);
  return f;
}

FpPoly FpPoly::variable(std::uint32_t p, std::size_t num_vars, std::size_t var) {
  FpPoly f(p, num_vars);
  Exponent e(num_vars, 0);
  e.at(var) = 1;
  f.add_term(e, 1);
  return f;
}

bool FpPoly::has_constant_term() const { return terms_.contains(Exponent(s_, 0)); }

std::uint64_t FpPoly::order() const {
  if (terms_.empty()) return 0;
  std::uint64_t best = UINT64_MAX;
  for (const auto& [e, c] : terms_) {
    std::uint64_t deg = 0;
    for (auto x : e) deg += x;
    best = std::min(best, deg);
  }
  return best;
}

void FpPoly::add_term(const Exponent& e, std::int64_t c) {
  if (e.size() != s_) throw DomainError("exponent vector length does not match the ring");
  auto r = static_cast<std::int64_t>(c % static_cast<std::int64_t>(p_));
  if (r < 0) r += p_;
  if (r == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, static_cast<std::uint32_t>(r));
  if (!inserted) {
    it->second = static_cast<std::uint32_t>((it->second + static_cast<std::uint64_t>(r)) % p_);
    if (it->second == 0) terms_.erase(it);
  }
}

FpPoly FpPoly::embedded(std::size_t total_vars, std::size_t offset) const {
  if (offset + s_ > total_vars) throw DomainError("embedding does not fit the target ring");
  FpPoly g(p_, total_vars);
  for (const auto& [e, c] : terms_) {
    Exponent big(total_vars, 0);
    std::copy(e.begin(), e.end(), big.begin() + static_cast<long>(offset));
    g.terms_.emplace(std::move(big), c);
  }
  return g;
}

FpPoly FpPoly::frobenius(unsigned i) const {
  std::uint64_t scale = 1;
  for (unsigned k = 0; k < i; ++k) scale *= p_;
  FpPoly g(p_, s_);
  for (const auto& [e, c] : terms_) {
    Exponent scaled(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      scaled[k] = static_cast<std::uint32_t>(e[k] * scale);
    }
    g.terms_.emplace(std::move(scaled), c);  // c^(p^i) == c in F_p
  }
  return g;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  if (a.p_ != b.p_ || a.s_ != b.s_) throw DomainError("adding polynomials from different rings");
  FpPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) { return mul_trunc(a, b, UINT64_MAX); }

std::string FpPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (c != 1) {
      os << c;
      wrote = true;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (k + 1);
      if (e[k] > 1) os << "^" << e[k];
      wrote = true;
    }
    if (!wrote) os << "1";
  }
  return os.str();
}

namespace {

void require_power_of(std::uint64_t q, std::uint32_t p) {
  if (q == 0) throw DomainError("truncation bound must be positive");
  std::uint64_t x = q;
  while (x % p == 0) x /= p;
  if (x != 1) {
    throw DomainError(std::to_string(q) + " is not a power of the characteristic " + std::to_string(p));
  }
}

bool in_box(const Exponent& e, std::uint64_t q) {
  return std::all_of(e.begin(), e.end(), [q](std::uint32_t x) { return x < q; });
}

}  // namespace

FpPoly truncate(const FpPoly& f, std::uint64_t q) {
  require_power_of(q, f.p());
  FpPoly g(f.p(), f.num_vars());
  for (const auto& [e, c] : f.terms()) {
    if (in_box(e, q)) g.add_term(e, c);
  }
  return g;
}

FpPoly mul_trunc(const FpPoly& a, const FpPoly& b, std::uint64_t q) {
  if (a.p() != b.p() || a.num_vars() != b.num_vars()) {
    throw DomainError("multiplying polynomials from different rings");
  }
  const std::uint64_t p = a.p();
  std::map<Exponent, std::uint64_t> acc;
  Exponent e(a.num_vars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      bool keep = true;
      for (std::size_t k = 0; k < e.size(); ++k) {
        const std::uint64_t x = static_cast<std::uint64_t>(ea[k]) + eb[k];
        if (x >= q) {
          keep = false;
          break;
        }
        e[k] = static_cast<std::uint32_t>(x);
      }
      if (!keep) continue;
      auto& slot = acc[e];
      slot = (slot + static_cast<std::uint64_t>(ca) * cb) % p;
    }
  }
  FpPoly r(a.p(), a.num_vars());
  for (const auto& [ex, c] : acc) {
    if (c != 0) r.add_term(ex, static_cast<std::int64_t>(c));
  }
  return r;
}

FpPoly power_mod(const FpPoly& f, std::uint64_t a, std::uint64_t q) {
  require_power_of(q, f.p());
  FpPoly result = truncate(FpPoly::one(f.p(), f.num_vars()), q);
  const std::uint64_t p = f.p();
  FpPoly frob = truncate(f, q);  // f^(p^i) mod m^[q], starting at i = 0
  std::uint64_t scale = 1;
  while (a > 0) {
    const std::uint64_t digit = a % p;
    for (std::uint64_t k = 0; k < digit; ++k) {
      result = mul_trunc(result, frob, q);
      if (result.is_zero()) return result;
    }
    a /= p;
    if (a == 0) break;
    // Advance to f^(p^(i+1)); once p^i >= q only the constant term can survive.
    if (scale < q) scale *= p;
    FpPoly next(f.p(), f.num_vars());
    for (const auto& [e, c] : f.terms()) {
      Exponent scaled(e.size());
      bool keep = true;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] != 0 && (scale >= q || e[k] >= (q + scale - 1) / scale)) {
          keep = false;
          break;
        }
        scaled[k] = static_cast<std::uint32_t>(e[k] * scale);
      }
      if (keep) next.add_term(scaled, c);
    }
    frob = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  struct RawTerm {
    std::int64_t sign = 1;
    std::vector<std::string> coeffs;           // decimal integer factors
    std::vector<std::pair<unsigned, std::uint32_t>> powers;  // (1-based var, exponent)
  };

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> out;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      RawTerm t;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') t.sign = -1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      parse_term(t);
      out.push_back(std::move(t));
      first = false;
      skip_ws();
    }
    return out;
  }

 private:
  void parse_term(RawTerm& t) {
    parse_factor(t);
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      parse_factor(t);
      skip_ws();
    }
  }

  void parse_factor(RawTerm& t) {
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.coeffs.push_back(read_digits());
      return;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected character '") + c + "'");
    std::string name;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) name += text_[pos_++];
    const unsigned var = variable_index(name);
    std::uint32_t exp = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      const std::string digits = read_digits();
      if (digits.size() > 9) fail("exponent too large");
      exp = static_cast<std::uint32_t>(std::stoul(digits));
    }
    t.powers.emplace_back(var, exp);
  }

  unsigned variable_index(const std::string& name) {
    if (name == "x") return 1;
    if (name == "y") return 2;
    if (name == "z") return 3;
    if (name == "w") return 4;
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      if (name.size() > 6) fail("variable index too large in '" + name + "'");
      const unsigned idx = static_cast<unsigned>(std::stoul(name.substr(1)));
      if (idx == 0) fail("variables are numbered from x1");
      return idx;
    }
    fail("unknown variable '" + name + "'");
  }

  std::string read_digits() {
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += text_[pos_++];
    if (d.empty()) fail("expected a number");
    return d;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial '" + std::string(text_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::int64_t residue_of_decimal(const std::string& digits, std::uint32_t p) {
  std::uint64_t r = 0;
  for (char ch : digits) r = (r * 10 + static_cast<std::uint64_t>(ch - '0')) % p;
  return static_cast<std::int64_t>(r);
}

}  // namespace

ParsedPoly parse_fp_poly(std::string_view text, std::uint32_t p, std::optional<std::size_t> num_vars) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  const auto raw = PolyParser(text).parse();

  std::set<unsigned> used;
  for (const auto& t : raw) {
    for (const auto& [v, e] : t.powers) used.insert(v);
  }

  std::vector<unsigned> var_index;
  if (num_vars) {
    if (*num_vars == 0) throw DomainError("number of variables must be positive");
    if (!used.empty() && *used.rbegin() > *num_vars) {
      throw DomainError("polynomial uses x" + std::to_string(*used.rbegin()) + " but the ring has only " +
                        std::to_string(*num_vars) + " variables");
    }
    for (unsigned i = 1; i <= *num_vars; ++i) var_index.push_back(i);
  } else {
    if (used.empty()) throw DomainError("polynomial '" + std::string(text) + "' has no variables");
    var_index.assign(used.begin(), used.end());
  }

  const std::size_t s = var_index.size();
  FpPoly f(p, s);
  for (const auto& t : raw) {
    std::int64_t c = t.sign < 0 ? static_cast<std::int64_t>(p) - 1 : 1;
    for (const auto& digits : t.coeffs) c = (c * residue_of_decimal(digits, p)) % p;
    Exponent e(s, 0);
    for (const auto& [v, x] : t.powers) {
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(var_index.begin(), var_index.end(), v) - var_index.begin());
      e[pos] += x;
    }
    f.add_term(e, c);
  }
  return {std::move(f), std::move(var_index)};
}

}  // namespace hkfs
