#include "hkfs/phi.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

#include "hkfs/error.hpp"

namespace hkfs {

DyadicPoint DyadicPoint::canonical(std::uint32_t p) const {
  DyadicPoint t = *this;
  if (t.a == 0) return {mpz_class(0), 0};
  while (t.n > 0 && mpz_divisible_ui_p(t.a.get_mpz_t(), p) != 0) {
    t.a /= p;
    --t.n;
  }
  return t;
}

Rat DyadicPoint::value(std::uint32_t p) const { return Rat(a, ipow(p, n)); }

std::string DyadicPoint::str(std::uint32_t p) const {
  if (n == 0) return a.get_str();
  return a.get_str() + "/" + ipow(p, n).get_str();
}

DyadicPoint parse_point(std::string_view text, std::uint32_t p) {
  const Rat r = Rat::parse(text);
  mpz_class den = r.den();
  unsigned n = 0;
  while (den > 1 && mpz_divisible_ui_p(den.get_mpz_t(), p) != 0) {
    den /= p;
    ++n;
  }
  if (den != 1) throw DomainError("point " + std::string(text) + " is not of the form a/" + std::to_string(p) + "^n");
  if (r.sign() < 0 || r > Rat(1)) throw DomainError("point " + std::string(text) + " lies outside [0, 1]");
  return {r.num(), n};
}

namespace detail {

class PhiNode {
 public:
  explicit PhiNode(std::uint32_t p) : p_(p) {}
  virtual ~PhiNode() = default;

  std::uint32_t p() const { return p_; }
  virtual std::string describe() const = 0;

  Rat eval(const DyadicPoint& t) const {
    const DyadicPoint c = t.canonical(p_);
    const Key key{c.n, c.a};
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Rat v = compute(c);
    std::unique_lock lock(mutex_);
    cache_.try_emplace(key, v);
    return v;
  }

 protected:
  /// t is canonical and inside [0, 1].
  virtual Rat compute(const DyadicPoint& t) const = 0;

 private:
  struct Key {
    unsigned n;
    mpz_class a;
  };
  struct KeyLess {
    bool operator()(const Key& x, const Key& y) const {
      if (x.n != y.n) return x.n < y.n;
      return cmp(x.a, y.a) < 0;
    }
  };

  std::uint32_t p_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, Rat, KeyLess> cache_;
};

namespace {

using NodePtr = std::shared_ptr<const PhiNode>;

class HypersurfaceNode final : public PhiNode {
 public:
  HypersurfaceNode(FpPoly f, std::uint64_t budget) : PhiNode(f.p()), f_(std::move(f)), budget_(budget) {
    if (f_.is_zero()) throw DomainError("f = 0 is not a hypersurface");
    if (f_.has_constant_term()) throw DomainError("f has a nonzero constant term (not in the maximal ideal)");
  }
  std::string describe() const override { return "phi[" + f_.str() + ", p=" + std::to_string(p()) + "]"; }

 protected:
  Rat compute(const DyadicPoint& t) const override {
    if (!t.a.fits_ulong_p()) {
      throw BudgetError("point " + t.str(p()) + " is far beyond the dimension budget");
    }
    const std::uint64_t len = colength(f_, t.a.get_ui(), t.n, budget_);
    return Rat(mpz_class(static_cast<unsigned long>(len)), ipow(p(), t.n * f_.num_vars()));
  }

 private:
  FpPoly f_;
  std::uint64_t budget_;
};

class ConstantNode final : public PhiNode {
 public:
  ConstantNode(std::uint32_t p, Rat c) : PhiNode(p), c_(std::move(c)) {}
  std::string describe() const override { return c_.str(); }

 protected:
  Rat compute(const DyadicPoint&) const override { return c_; }

 private:
  Rat c_;
};

class TableNode final : public PhiNode {
 public:
  TableNode(std::uint32_t p, std::string label, std::function<Rat(const DyadicPoint&)> fn)
      : PhiNode(p), label_(std::move(label)), fn_(std::move(fn)) {}
  std::string describe() const override { return label_; }

 protected:
  Rat compute(const DyadicPoint& t) const override { return fn_(t); }

 private:
  std::string label_;
  std::function<Rat(const DyadicPoint&)> fn_;
};

class SumNode final : public PhiNode {
 public:
  SumNode(NodePtr a, NodePtr b) : PhiNode(a->p()), a_(std::move(a)), b_(std::move(b)) {}
  std::string describe() const override { return "(" + a_->describe() + " + " + b_->describe() + ")"; }

 protected:
  Rat compute(const DyadicPoint& t) const override { return a_->eval(t) + b_->eval(t); }

 private:
  NodePtr a_, b_;
};

class ProductNode final : public PhiNode {
 public:
  ProductNode(NodePtr a, NodePtr b) : PhiNode(a->p()), a_(std::move(a)), b_(std::move(b)) {}
  std::string describe() const override { return a_->describe() + " * " + b_->describe(); }

 protected:
  Rat compute(const DyadicPoint& t) const override {
    const Rat x = a_->eval(t);
    if (x.is_zero()) return x;
    return x * b_->eval(t);
  }

 private:
  NodePtr a_, b_;
};

class ScalarNode final : public PhiNode {
 public:
  ScalarNode(Rat c, NodePtr a) : PhiNode(a->p()), c_(std::move(c)), a_(std::move(a)) {}
  std::string describe() const override { return c_.str() + " * " + a_->describe(); }

 protected:
  Rat compute(const DyadicPoint& t) const override { return c_.is_zero() ? Rat() : c_ * a_->eval(t); }

 private:
  Rat c_;
  NodePtr a_;
};

class ReflectionNode final : public PhiNode {
 public:
  explicit ReflectionNode(NodePtr a) : PhiNode(a->p()), a_(std::move(a)) {}
  std::string describe() const override { return "reflect(" + a_->describe() + ")"; }

 protected:
  Rat compute(const DyadicPoint& t) const override {
    return a_->eval({ipow(p(), t.n) - t.a, t.n});
  }

 private:
  NodePtr a_;
};

class ShiftNode final : public PhiNode {
 public:
  ShiftNode(NodePtr a, unsigned n, mpz_class b) : PhiNode(a->p()), a_(std::move(a)), n_(n), b_(std::move(b)) {}
  std::string describe() const override {
    return "T[" + std::to_string(p()) + "^" + std::to_string(n_) + "|" + b_.get_str() + "](" + a_->describe() + ")";
  }

 protected:
  Rat compute(const DyadicPoint& t) const override {
    return a_->eval({t.a + b_ * ipow(p(), t.n), t.n + n_});
  }

 private:
  NodePtr a_;
  unsigned n_;
  mpz_class b_;
};

void require_same_p(const PhiNode& a, const PhiNode& b) {
  if (a.p() != b.p()) throw DomainError("combining functions of different characteristics");
}

}  // namespace
}  // namespace detail

PhiFunction PhiFunction::hypersurface(const FpPoly& f, std::uint64_t budget) {
  return PhiFunction(std::make_shared<detail::HypersurfaceNode>(f, budget));
}

PhiFunction PhiFunction::constant(std::uint32_t p, const Rat& c) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  return PhiFunction(std::make_shared<detail::ConstantNode>(p, c));
}

PhiFunction PhiFunction::table(std::uint32_t p, std::string label, std::function<Rat(const DyadicPoint&)> fn) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  return PhiFunction(std::make_shared<detail::TableNode>(p, std::move(label), std::move(fn)));
}

std::uint32_t PhiFunction::p() const { return node_->p(); }
std::string PhiFunction::describe() const { return node_->describe(); }

Rat PhiFunction::operator()(const DyadicPoint& t) const {
  if (t.a < 0 || t.a > ipow(p(), t.n)) {
    throw DomainError("point " + t.str(p()) + " lies outside [0, 1]");
  }
  return node_->eval(t);
}

PhiFunction operator+(const PhiFunction& a, const PhiFunction& b) {
  detail::require_same_p(*a.node_, *b.node_);
  return PhiFunction(std::make_shared<detail::SumNode>(a.node_, b.node_));
}

PhiFunction operator*(const PhiFunction& a, const PhiFunction& b) {
  detail::require_same_p(*a.node_, *b.node_);
  return PhiFunction(std::make_shared<detail::ProductNode>(a.node_, b.node_));
}

PhiFunction operator*(const Rat& c, const PhiFunction& a) {
  return PhiFunction(std::make_shared<detail::ScalarNode>(c, a.node_));
}

PhiFunction reflect(const PhiFunction& phi) {
  return PhiFunction(std::make_shared<detail::ReflectionNode>(phi.node_));
}

PhiFunction shift(const PhiFunction& phi, unsigned n, const mpz_class& b) {
  if (b < 0 || b >= ipow(phi.p(), n)) {
    throw DomainError("shift offset " + b.get_str() + " outside [0, " + ipow(phi.p(), n).get_str() + ")");
  }
  return PhiFunction(std::make_shared<detail::ShiftNode>(phi.node_, n, b));
}

PhiFunction product_phi(const PhiFunction& phi, const PhiFunction& psi) {
  return phi + psi + Rat(-1) * (phi * psi);
}

std::vector<Rat> e_sequence(const PhiFunction& phi, unsigned s, unsigned N) {
  std::vector<Rat> out;
  out.reserve(N + 1);
  for (unsigned n = 0; n <= N; ++n) {
    const Rat v = phi({mpz_class(1), n});
    out.push_back(Rat(ipow(phi.p(), static_cast<unsigned long>(n) * s)) * v);
  }
  return out;
}

std::uint64_t hk_function(const FpPoly& f, unsigned n, std::uint64_t budget) {
  return colength(f, 1, n, budget);
}

std::uint64_t fs_function(const FpPoly& f, unsigned n, std::uint64_t budget) {
  if (n == 0) throw DomainError("the F-signature function is taken for n >= 1");
  const TruncatedAlgebra alg(f.p(), f.num_vars(), n, budget);
  return alg.dim() - colength(f, alg.q() - 1, n, budget);
}

}  // namespace hkfs
