#include "hkfs/unipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hkfs/error.hpp"

namespace hkfs {

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::monomial(std::size_t k, const Rat& c) {
  std::vector<Rat> v(k + 1);
  v[k] = c;
  return UniPoly(std::move(v));
}

Rat UniPoly::eval(const Rat& z) const {
  Rat acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return scaled(lead().inverse());
}

UniPoly UniPoly::scaled(const Rat& c) const {
  if (c.is_zero()) return {};
  std::vector<Rat> v = c_;
  for (auto& x : v) x *= c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<Rat> v(k);
  v.insert(v.end(), c_.begin(), c_.end());
  return UniPoly(std::move(v));
}

UniPoly UniPoly::truncated(std::size_t n) const {
  if (n >= c_.size()) return *this;
  return UniPoly(std::vector<Rat>(c_.begin(), c_.begin() + static_cast<long>(n)));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(v));
}

std::string UniPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    Rat mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rat(1);
    if (!unit || i == 0) os << mag;
    if (i > 0) {
      if (!unit) os << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rat> rem = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) return {UniPoly{}, a};
  std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rat inv_lead = b.lead().inverse();
  for (long k = a.degree() - db; k >= 0; --k) {
    const Rat& top = rem[static_cast<std::size_t>(k + db)];
    if (top.is_zero()) continue;
    const Rat q = top * inv_lead;
    quo[static_cast<std::size_t>(k)] = q;
    for (long j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.monic();
  UniPoly y = b.monic();
  while (!y.is_zero()) {
    UniPoly r = divrem(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x;
}

bool divides(const UniPoly& b, const UniPoly& a) { return divrem(a, b).second.is_zero(); }

namespace {

UniPoly cyclotomic_memo(unsigned M, std::map<unsigned, UniPoly>& memo) {
  if (auto it = memo.find(M); it != memo.end()) return it->second;
  UniPoly acc = UniPoly::monomial(M) - UniPoly::constant(Rat(1));
  for (unsigned d = 1; d < M; ++d) {
    if (M % d != 0) continue;
    auto [q, r] = divrem(acc, cyclotomic_memo(d, memo));
    acc = std::move(q);
  }
  memo.emplace(M, acc);
  return acc;
}

}  // namespace

UniPoly cyclotomic(unsigned M) {
  if (M == 0) throw DomainError("cyclotomic polynomial index must be >= 1");
  std::map<unsigned, UniPoly> memo;
  return cyclotomic_memo(M, memo);
}

unsigned euler_phi(unsigned M) {
  unsigned result = M;
  unsigned m = M;
  for (unsigned q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    while (m % q == 0) m /= q;
    result -= result / q;
  }
  if (m > 1) result -= result / m;
  return result;
}

// ---------------------------------------------------------------------------
// RationalGF

namespace {

// Scale factor turning den into a primitive integer polynomial with positive
// leading coefficient.
Rat canonical_scale(const UniPoly& den) {
  mpz_class lcm_den = 1;
  for (const auto& c : den.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
  mpz_class content = 0;
  for (const auto& c : den.coeffs()) {
    const mpz_class scaled = c.num() * (lcm_den / c.den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
  }
  Rat s(lcm_den, content);
  if (den.lead().sign() < 0) s = -s;
  return s;
}

}  // namespace

RationalGF::RationalGF(UniPoly num, UniPoly den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = {};
    den_ = UniPoly::constant(Rat(1));
    return;
  }
  const UniPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divrem(num, g).first;
    den = divrem(den, g).first;
  }
  const Rat s = canonical_scale(den);
  num_ = num.scaled(s);
  den_ = den.scaled(s);
}

std::vector<Rat> RationalGF::expand(std::size_t n) const {
  const Rat d0 = den_.coeff(0);
  if (d0.is_zero()) throw DomainError("rational function has a pole at z = 0");
  const Rat inv = d0.inverse();
  std::vector<Rat> e(n);
  const auto& dc = den_.coeffs();
  for (std::size_t k = 0; k < n; ++k) {
    Rat acc = num_.coeff(k);
    const std::size_t top = std::min(k, dc.size() - 1);
    for (std::size_t j = 1; j <= top; ++j) {
      if (!dc[j].is_zero()) acc -= dc[j] * e[k - j];
    }
    e[k] = acc * inv;
  }
  return e;
}

RationalGF operator+(const RationalGF& a, const RationalGF& b) {
  if (a.den_ == b.den_) return RationalGF(a.num_ + b.num_, a.den_);
  return RationalGF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalGF operator-(const RationalGF& a, const RationalGF& b) {
  if (a.den_ == b.den_) return RationalGF(a.num_ - b.num_, a.den_);
  return RationalGF(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalGF operator*(const RationalGF& a, const RationalGF& b) {
  return RationalGF(a.num_ * b.num_, a.den_ * b.den_);
}

std::string RationalGF::str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

// ---------------------------------------------------------------------------
// Partial fractions and residues

namespace {

std::vector<mpz_class> divisors_of(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (unsigned long q = 2; q < 1000000 && mpz_class(q) * q <= n; ++q) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
      n /= q;
      ++e;
    }
    if (e > 0) factors.emplace_back(mpz_class(q), e);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw DomainError("cannot factor " + n.get_str() + " while searching rational roots");
    }
    factors.emplace_back(n, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [q, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
    }
  }
  return divs;
}

}  // namespace

std::vector<PartialFraction> partial_fractions(const RationalGF& g) {
  const UniPoly& num = g.num();
  const UniPoly& den = g.den();
  if (num.is_zero()) return {};
  if (num.degree() >= den.degree()) throw DomainError("partial fractions need a proper fraction");
  if (den.coeff(0).is_zero()) throw DomainError("denominator vanishes at z = 0");

  // Roots of the reversed polynomial are the delta_i. den is primitive integer,
  // so every rational root a/b has a | den_lead and b | den_0.
  const auto k = static_cast<std::size_t>(den.degree());
  std::vector<Rat> rev(k + 1);
  for (std::size_t i = 0; i <= k; ++i) rev[k - i] = den.coeffs()[i];
  UniPoly reversed(rev);

  std::vector<Rat> deltas;
  const auto tops = divisors_of(den.lead().num());
  const auto bottoms = divisors_of(den.coeff(0).num());
  for (const auto& a : tops) {
    for (const auto& b : bottoms) {
      for (int sign : {1, -1}) {
        const Rat cand = Rat(mpz_class(sign * a), b);
        if (std::find(deltas.begin(), deltas.end(), cand) != deltas.end()) continue;
        if (reversed.eval(cand).is_zero()) deltas.push_back(cand);
      }
    }
  }
  if (deltas.size() != k) {
    throw DomainError("denominator does not split into distinct rational linear factors");
  }
  std::sort(deltas.begin(), deltas.end());

  std::vector<PartialFraction> out;
  out.reserve(k);
  for (const auto& delta : deltas) {
    const UniPoly factor{Rat(1), -delta};
    const UniPoly rest = divrem(den, factor).first;
    const Rat at = delta.inverse();
    out.push_back({num.eval(at) / rest.eval(at), delta});
  }
  return out;
}

Rat residue_limit(const RationalGF& g, unsigned d, unsigned long p) {
  const Rat delta(ipow(p, d));
  const Rat at = delta.inverse();
  if (!g.den().eval(at).is_zero()) return Rat();
  const UniPoly factor{Rat(1), -delta};
  const UniPoly rest = divrem(g.den(), factor).first;
  const Rat rest_at = rest.eval(at);
  if (rest_at.is_zero()) {
    throw DomainError("pole of order >= 2 at 1/" + delta.str());
  }
  return g.num().eval(at) / rest_at;
}

}  // namespace hkfs
