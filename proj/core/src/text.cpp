// Parser and printer for the expression grammar.

#include "sublevel/error.hpp"
#include "sublevel/expr.hpp"

#include <cctype>
#include <string>

namespace sublevel {
namespace {

class Parser {
 public:
  Parser(std::string_view text, int dimension) : text_(text), dimension_(dimension) {}

  Expr run() {
    if (dimension_ < 1) throw DomainError("dimension must be >= 1");
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::negate(term()));
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("division is only allowed by a numeric literal");
        const std::size_t at = pos_;
        Rational q = number();
        if (q == 0) throw ParseError("division by zero", at);
        if (factors.back().is_constant()) {
          factors.back() = Expr::constant(factors.back().value() / q);
        } else {
          factors.push_back(Expr::constant(Rational(1) / q));
        }
      } else {
        break;
      }
    }
    return Expr::product(std::move(factors));
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        negative = text_[pos_] == '-';
        ++pos_;
      }
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("non-integer exponent");
      }
      long n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + (text_[pos_++] - '0');
        if (n > 1'000'000) fail("exponent too large");
      }
      if (pos_ < text_.size() && text_[pos_] == '.') fail("non-integer exponent");
      return Expr::power(std::move(b), negative ? -n : n);
    }
    return b;
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    try {
      return parse_decimal(text_.substr(start, pos_ - start));
    } catch (const ParseError& err) {
      throw ParseError("malformed number", start + err.position());
    }
  }

  Expr base() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(number());
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (accept('-')) return Expr::negate(factor());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word.size() > 1 && word[0] == 'x' &&
          word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
        if (word.size() > 9) throw ParseError("variable index too large", start);
        const int index = std::stoi(std::string(word.substr(1)));
        if (index < 1) throw ParseError("variable indices start at 1", start);
        if (index > dimension_) {
          throw ParseError("variable index " + std::to_string(index) + " exceeds dimension " +
                               std::to_string(dimension_),
                           start);
        }
        return Expr::variable(index);
      }
      if (word == "sin" || word == "cos" || word == "exp") {
        expect('(');
        Expr arg = expr();
        expect(')');
        if (word == "sin") return Expr::sin(std::move(arg));
        if (word == "cos") return Expr::cos(std::move(arg));
        return Expr::exp(std::move(arg));
      }
      throw ParseError("unknown identifier '" + std::string(word) + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
};

// Printing precedence; an operand printed in a context of higher precedence is parenthesized.
constexpr int kSumPrec = 1;
constexpr int kProductPrec = 2;
constexpr int kFactorPrec = 3;
constexpr int kAtomPrec = 4;

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
      return (e.value() >= 0 && is_integer(e.value())) ? kAtomPrec : kProductPrec;
    case Kind::Sum:
      return kSumPrec;
    case Kind::Product:
      return kProductPrec;
    case Kind::Power:
    case Kind::Negate:
      return kFactorPrec;
    default:
      return kAtomPrec;
  }
}

void print(const Expr& e, int context, std::string& out);

// Negative-looking terms of a sum, printed after " - ".
bool split_negative(const Expr& term, Expr& magnitude) {
  if (term.kind() == Kind::Constant && term.value() < 0) {
    magnitude = Expr::constant(-term.value());
    return true;
  }
  if (term.kind() == Kind::Negate) {
    magnitude = term.operand();
    return true;
  }
  if (term.kind() == Kind::Product && term.operand(0).is_constant() && term.operand(0).value() < 0) {
    std::vector<Expr> factors(term.operands().begin(), term.operands().end());
    const Rational c = -factors.front().value();
    if (c == 1) {
      factors.erase(factors.begin());
    } else {
      factors.front() = Expr::constant(c);
    }
    magnitude = Expr::product(std::move(factors));
    return true;
  }
  return false;
}

void print_body(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::Constant:
      out += to_string(e.value());
      return;
    case Kind::Variable:
      out += 'x';
      out += std::to_string(e.index());
      return;
    case Kind::Sum: {
      bool first = true;
      for (const auto& t : e.operands()) {
        Expr magnitude;
        if (!first && split_negative(t, magnitude)) {
          out += " - ";
          print(magnitude, kProductPrec, out);
        } else {
          if (!first) out += " + ";
          print(t, kProductPrec, out);
        }
        first = false;
      }
      return;
    }
    case Kind::Product: {
      auto ops = e.operands();
      std::size_t i = 0;
      if (ops[0].is_constant() && ops[0].value() == -1 && ops.size() > 1) {
        out += '-';
        i = 1;
      }
      for (std::size_t k = i; k < ops.size(); ++k) {
        if (k > i) out += '*';
        const bool needs_parens =
            ops[k].is_constant() ? precedence(ops[k]) < kAtomPrec : precedence(ops[k]) < kFactorPrec;
        if (needs_parens) {
          out += '(';
          print(ops[k], 0, out);
          out += ')';
        } else {
          print(ops[k], kFactorPrec, out);
        }
      }
      return;
    }
    case Kind::Power:
      print(e.operand(), kAtomPrec, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case Kind::Negate:
      out += '-';
      print(e.operand(), kFactorPrec, out);
      return;
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Exp:
      out += e.kind() == Kind::Sin ? "sin(" : e.kind() == Kind::Cos ? "cos(" : "exp(";
      print(e.operand(), 0, out);
      out += ')';
      return;
  }
}

void print(const Expr& e, int context, std::string& out) {
  if (precedence(e) < context) {
    out += '(';
    print_body(e, out);
    out += ')';
  } else {
    print_body(e, out);
  }
}

}  // namespace

Expr parse(std::string_view text, int dimension) { return Parser(text, dimension).run(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

}  // namespace sublevel
