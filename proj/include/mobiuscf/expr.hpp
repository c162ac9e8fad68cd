#pragma once

#include <memory>
#include <string>
#include <utility>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/integer.hpp"

namespace mcf {

enum class Parity { Even, Odd, Unknown };

// Parity of an expression's value as a function of the parity of k.
struct ParityPattern {
  Parity at_even_k = Parity::Unknown;
  Parity at_odd_k = Parity::Unknown;
  bool decided() const { return at_even_k != Parity::Unknown && at_odd_k != Parity::Unknown; }
};

// Integer expression in the single period variable k. Division is exact
// division (eval throws NonIntegerCoefficient when the quotient is not an
// integer), '^' wants a nonnegative integer exponent.
class CoeffExpr {
 public:
  enum class Kind { Literal, Var, Add, Sub, Mul, Div, Pow };

  static CoeffExpr lit(Integer v) {
    return CoeffExpr(std::make_shared<Node>(Node{Kind::Literal, std::move(v), nullptr, nullptr}));
  }
  static CoeffExpr var_k() { return CoeffExpr(std::make_shared<Node>(Node{Kind::Var, 0, nullptr, nullptr})); }
  static CoeffExpr add(CoeffExpr x, CoeffExpr y) { return combine(Kind::Add, std::move(x), std::move(y)); }
  static CoeffExpr sub(CoeffExpr x, CoeffExpr y) { return combine(Kind::Sub, std::move(x), std::move(y)); }
  static CoeffExpr mul(CoeffExpr x, CoeffExpr y) { return combine(Kind::Mul, std::move(x), std::move(y)); }
  static CoeffExpr div(CoeffExpr x, CoeffExpr y) { return combine(Kind::Div, std::move(x), std::move(y)); }
  static CoeffExpr pow(CoeffExpr x, CoeffExpr y) { return combine(Kind::Pow, std::move(x), std::move(y)); }

  friend CoeffExpr operator+(CoeffExpr x, CoeffExpr y) { return add(std::move(x), std::move(y)); }
  friend CoeffExpr operator-(CoeffExpr x, CoeffExpr y) { return sub(std::move(x), std::move(y)); }
  friend CoeffExpr operator*(CoeffExpr x, CoeffExpr y) { return mul(std::move(x), std::move(y)); }

  Kind kind() const { return n_->kind; }
  const Integer& literal() const { return n_->value; }
  CoeffExpr left() const { return CoeffExpr(n_->l); }
  CoeffExpr right() const { return CoeffExpr(n_->r); }

  Integer eval(const Integer& k) const { return eval_node(*n_, k); }

  bool same(const CoeffExpr& o) const { return same_node(*n_, *o.n_); }

  // Replaces the variable by another expression.
  CoeffExpr subst(const CoeffExpr& arg) const {
    switch (n_->kind) {
      case Kind::Literal: return *this;
      case Kind::Var: return arg;
      default:
        return combine(n_->kind, CoeffExpr(n_->l).subst(arg), CoeffExpr(n_->r).subst(arg));
    }
  }

  bool is_literal() const { return n_->kind == Kind::Literal; }
  bool mentions_k() const {
    switch (n_->kind) {
      case Kind::Literal: return false;
      case Kind::Var: return true;
      default: return CoeffExpr(n_->l).mentions_k() || CoeffExpr(n_->r).mentions_k();
    }
  }

  // min_k: least k the expression will ever be evaluated at; it certifies
  // exponents of the bare variable as >= 1. Unknown parities make the caller
  // fall back to window evaluation.
  ParityPattern parity(const Integer& min_k) const { return parity_node(*n_, min_k); }

  std::string str() const { return format(*n_, 0); }

 private:
  struct Node {
    Kind kind;
    Integer value;  // Literal only
    std::shared_ptr<const Node> l, r;
  };

  explicit CoeffExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static CoeffExpr combine(Kind k, CoeffExpr x, CoeffExpr y) {
    return CoeffExpr(std::make_shared<Node>(Node{k, 0, std::move(x.n_), std::move(y.n_)}));
  }

  static Integer eval_node(const Node& n, const Integer& k) {
    switch (n.kind) {
      case Kind::Literal: return n.value;
      case Kind::Var: return k;
      case Kind::Add: return eval_node(*n.l, k) + eval_node(*n.r, k);
      case Kind::Sub: return eval_node(*n.l, k) - eval_node(*n.r, k);
      case Kind::Mul: return eval_node(*n.l, k) * eval_node(*n.r, k);
      case Kind::Div: {
        Integer num = eval_node(*n.l, k), den = eval_node(*n.r, k);
        if (den == 0) throw NonIntegerCoefficient("division by zero at k = " + k.str());
        if (num % den != 0)
          throw NonIntegerCoefficient(num.str() + "/" + den.str() + " is not an integer at k = " + k.str());
        return num / den;
      }
      case Kind::Pow: {
        Integer base = eval_node(*n.l, k), e = eval_node(*n.r, k);
        if (e < 0) throw NonIntegerCoefficient("negative exponent at k = " + k.str());
        if (e > 1000000) throw NonIntegerCoefficient("exponent too large at k = " + k.str());
        return ipow(base, e.convert_to<unsigned long>());
      }
    }
    throw std::logic_error("unreachable");
  }

  static bool same_node(const Node& x, const Node& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Kind::Literal: return x.value == y.value;
      case Kind::Var: return true;
      default: return same_node(*x.l, *y.l) && same_node(*x.r, *y.r);
    }
  }

  static Parity of_integer(const Integer& v) { return is_even(v) ? Parity::Even : Parity::Odd; }

  static Parity p_add(Parity a, Parity b) {
    if (a == Parity::Unknown || b == Parity::Unknown) return Parity::Unknown;
    return a == b ? Parity::Even : Parity::Odd;
  }
  static Parity p_mul(Parity a, Parity b) {
    if (a == Parity::Even || b == Parity::Even) return Parity::Even;
    if (a == Parity::Odd && b == Parity::Odd) return Parity::Odd;
    return Parity::Unknown;
  }

  static ParityPattern parity_node(const Node& n, const Integer& min_k) {
    switch (n.kind) {
      case Kind::Literal: {
        Parity p = of_integer(n.value);
        return {p, p};
      }
      case Kind::Var: return {Parity::Even, Parity::Odd};
      case Kind::Add:
      case Kind::Sub: {
        auto a = parity_node(*n.l, min_k), b = parity_node(*n.r, min_k);
        return {p_add(a.at_even_k, b.at_even_k), p_add(a.at_odd_k, b.at_odd_k)};
      }
      case Kind::Mul: {
        auto a = parity_node(*n.l, min_k), b = parity_node(*n.r, min_k);
        return {p_mul(a.at_even_k, b.at_even_k), p_mul(a.at_odd_k, b.at_odd_k)};
      }
      case Kind::Div: {
        // Exact division by an odd constant preserves parity; anything else
        // is undecidable here.
        if (n.r->kind == Kind::Literal && is_odd(n.r->value)) return parity_node(*n.l, min_k);
        return {};
      }
      case Kind::Pow: {
        auto base = parity_node(*n.l, min_k);
        if (n.r->kind == Kind::Literal) {
          if (n.r->value == 0) return {Parity::Odd, Parity::Odd};
          if (n.r->value > 0) return base;
          return {};
        }
        // Odd^anything stays odd (including exponent 0). An even base needs
        // a positive-exponent certificate: the bare variable with min_k >= 1.
        if (base.at_even_k == Parity::Odd && base.at_odd_k == Parity::Odd) return base;
        if (n.r->kind == Kind::Var && min_k >= 1) return base;
        return {};
      }
    }
    return {};
  }

  // Precedence levels mirror the grammar: 0 sum, 1 product, 2 power, 3 atom.
  // A signed integer counts as an atom.
  static std::string format(const Node& n, int need) {
    switch (n.kind) {
      case Kind::Literal: return n.value.str();
      case Kind::Var: return "k";
      case Kind::Add:
      case Kind::Sub: {
        std::string s = format(*n.l, 0) + (n.kind == Kind::Add ? " + " : " - ") + format(*n.r, 1);
        return need >= 1 ? "(" + s + ")" : s;
      }
      case Kind::Mul:
      case Kind::Div: {
        std::string s = format(*n.l, 1) + (n.kind == Kind::Mul ? "*" : "/") + format(*n.r, 2);
        return need >= 2 ? "(" + s + ")" : s;
      }
      case Kind::Pow: {
        std::string s = format(*n.l, 3) + "^" + format(*n.r, 3);
        return need >= 3 ? "(" + s + ")" : s;
      }
    }
    throw std::logic_error("unreachable");
  }

  std::shared_ptr<const Node> n_;
};

}  // namespace mcf
