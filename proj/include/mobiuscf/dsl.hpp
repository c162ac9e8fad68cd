#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "mobiuscf/errors.hpp"
#include "mobiuscf/qpcf.hpp"

namespace mcf {

// Text form of a quasi-periodic continued fraction:
//
//   cf     := '[' list? (';' period '@' 'k' '=' integer '..')? ']'
//   list   := integer (',' integer)*
//   period := expr (',' expr)*
//   expr   := prod (('+'|'-') prod)*
//   prod   := pow (('*'|'/') pow)*
//   pow    := atom ('^' atom)?
//   atom   := integer | 'k' | '(' expr ')'
//
// e.g. "[2; 1, 2*k, 1 @ k=1..]", "[; 7*3^k @ k=1..]", "[1, 2, 3]".

namespace detail {

class Lexer {
 public:
  enum class Tok { LBracket, RBracket, Semi, Comma, At, KVar, Eq, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, DotDot, End };

  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  Tok tok() const { return tok_; }
  const Integer& value() const { return value_; }
  std::size_t pos() const { return tok_pos_; }

  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_pos_ = i_;
    if (i_ >= s_.size()) {
      tok_ = Tok::End;
      return;
    }
    char c = s_[i_];
    switch (c) {
      case '[': tok_ = Tok::LBracket; ++i_; return;
      case ']': tok_ = Tok::RBracket; ++i_; return;
      case ';': tok_ = Tok::Semi; ++i_; return;
      case ',': tok_ = Tok::Comma; ++i_; return;
      case '@': tok_ = Tok::At; ++i_; return;
      case '=': tok_ = Tok::Eq; ++i_; return;
      case '+': tok_ = Tok::Plus; ++i_; return;
      case '-': tok_ = Tok::Minus; ++i_; return;
      case '*': tok_ = Tok::Star; ++i_; return;
      case '/': tok_ = Tok::Slash; ++i_; return;
      case '^': tok_ = Tok::Caret; ++i_; return;
      case '(': tok_ = Tok::LParen; ++i_; return;
      case ')': tok_ = Tok::RParen; ++i_; return;
      case 'k': tok_ = Tok::KVar; ++i_; return;
      case '.':
        if (i_ + 1 < s_.size() && s_[i_ + 1] == '.') {
          tok_ = Tok::DotDot;
          i_ += 2;
          return;
        }
        throw ParseError(i_, "stray '.'");
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      value_ = Integer(s_.substr(i_, j - i_));
      i_ = j;
      tok_ = Tok::Int;
      return;
    }
    throw ParseError(i_, std::string("unexpected character '") + c + "'");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  std::size_t tok_pos_ = 0;
  Tok tok_ = Tok::End;
  Integer value_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lx_(s) {}

  QuasiPeriodicCF parse() {
    expect(Lexer::Tok::LBracket, "'['");
    QuasiPeriodicCF cf;
    if (lx_.tok() == Lexer::Tok::Int || lx_.tok() == Lexer::Tok::Minus) {
      cf.prefix.push_back(parse_integer());
      while (lx_.tok() == Lexer::Tok::Comma) {
        lx_.advance();
        cf.prefix.push_back(parse_integer());
      }
    }
    if (lx_.tok() == Lexer::Tok::Semi) {
      lx_.advance();
      cf.period.push_back(parse_expr());
      while (lx_.tok() == Lexer::Tok::Comma) {
        lx_.advance();
        cf.period.push_back(parse_expr());
      }
      expect(Lexer::Tok::At, "'@'");
      expect(Lexer::Tok::KVar, "'k'");
      expect(Lexer::Tok::Eq, "'='");
      cf.start = parse_integer();
      expect(Lexer::Tok::DotDot, "'..'");
    }
    expect(Lexer::Tok::RBracket, "']'");
    if (lx_.tok() != Lexer::Tok::End) throw ParseError(lx_.pos(), "trailing input after ']'");
    return cf;
  }

 private:
  void expect(Lexer::Tok t, const char* what) {
    if (lx_.tok() != t) throw ParseError(lx_.pos(), std::string("expected ") + what);
    lx_.advance();
  }

  Integer parse_integer() {
    bool neg = false;
    if (lx_.tok() == Lexer::Tok::Minus) {
      neg = true;
      lx_.advance();
    }
    if (lx_.tok() != Lexer::Tok::Int) throw ParseError(lx_.pos(), "expected integer");
    Integer v = lx_.value();
    lx_.advance();
    return neg ? Integer(-v) : v;
  }

  CoeffExpr parse_expr() {
    CoeffExpr e = parse_prod();
    while (lx_.tok() == Lexer::Tok::Plus || lx_.tok() == Lexer::Tok::Minus) {
      bool add = lx_.tok() == Lexer::Tok::Plus;
      lx_.advance();
      CoeffExpr r = parse_prod();
      e = add ? CoeffExpr::add(e, r) : CoeffExpr::sub(e, r);
    }
    return e;
  }

  CoeffExpr parse_prod() {
    CoeffExpr e = parse_pow();
    while (lx_.tok() == Lexer::Tok::Star || lx_.tok() == Lexer::Tok::Slash) {
      bool mul = lx_.tok() == Lexer::Tok::Star;
      lx_.advance();
      CoeffExpr r = parse_pow();
      e = mul ? CoeffExpr::mul(e, r) : CoeffExpr::div(e, r);
    }
    return e;
  }

  CoeffExpr parse_pow() {
    CoeffExpr e = parse_atom();
    if (lx_.tok() == Lexer::Tok::Caret) {
      lx_.advance();
      e = CoeffExpr::pow(e, parse_atom());
    }
    return e;
  }

  CoeffExpr parse_atom() {
    switch (lx_.tok()) {
      case Lexer::Tok::Minus:
      case Lexer::Tok::Int:
        return CoeffExpr::lit(parse_integer());
      case Lexer::Tok::KVar:
        lx_.advance();
        return CoeffExpr::var_k();
      case Lexer::Tok::LParen: {
        lx_.advance();
        CoeffExpr e = parse_expr();
        expect(Lexer::Tok::RParen, "')'");
        return e;
      }
      default:
        throw ParseError(lx_.pos(), "expected integer, 'k' or '('");
    }
  }

  Lexer lx_;
};

}  // namespace detail

inline QuasiPeriodicCF parse_cf(const std::string& text) { return detail::Parser(text).parse(); }

inline std::string format_cf(const QuasiPeriodicCF& cf) {
  std::string out = "[";
  for (std::size_t i = 0; i < cf.prefix.size(); ++i) {
    if (i) out += ", ";
    out += cf.prefix[i].str();
  }
  if (!cf.period.empty()) {
    out += "; ";
    for (std::size_t i = 0; i < cf.period.size(); ++i) {
      if (i) out += ", ";
      out += cf.period[i].str();
    }
    out += " @ k=" + cf.start.str() + "..";
  }
  out += "]";
  return out;
}

}  // namespace mcf
