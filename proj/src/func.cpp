#include "creal/func.hpp"

#include <cctype>

namespace cra {

namespace {

ExprPtr make(FuncExpr::Kind k, Rational v, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<FuncExpr>();
  e->kind = k;
  e->value = std::move(v);
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

}  // namespace

ExprPtr FuncExpr::var() { return make(Kind::Var, Rational(0), nullptr, nullptr); }
ExprPtr FuncExpr::constant(Rational v) {
  return make(Kind::Const, std::move(v), nullptr, nullptr);
}
ExprPtr FuncExpr::neg(ExprPtr e) {
  return make(Kind::Neg, Rational(0), std::move(e), nullptr);
}
ExprPtr FuncExpr::abs(ExprPtr e) {
  return make(Kind::Abs, Rational(0), std::move(e), nullptr);
}
ExprPtr FuncExpr::add(ExprPtr a, ExprPtr b) {
  return make(Kind::Add, Rational(0), std::move(a), std::move(b));
}
ExprPtr FuncExpr::sub(ExprPtr a, ExprPtr b) {
  return make(Kind::Sub, Rational(0), std::move(a), std::move(b));
}
ExprPtr FuncExpr::mul(ExprPtr a, ExprPtr b) {
  return make(Kind::Mul, Rational(0), std::move(a), std::move(b));
}
ExprPtr FuncExpr::min(ExprPtr a, ExprPtr b) {
  return make(Kind::Min, Rational(0), std::move(a), std::move(b));
}
ExprPtr FuncExpr::max(ExprPtr a, ExprPtr b) {
  return make(Kind::Max, Rational(0), std::move(a), std::move(b));
}

ExprPtr FuncExpr::substitute(const ExprPtr& e, const ExprPtr& replacement) {
  switch (e->kind) {
    case Kind::Var:
      return replacement;
    case Kind::Const:
      return e;
    case Kind::Neg:
    case Kind::Abs:
      return make(e->kind, Rational(0), substitute(e->lhs, replacement), nullptr);
    default:
      return make(e->kind, Rational(0), substitute(e->lhs, replacement),
                  substitute(e->rhs, replacement));
  }
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FuncExpr::Kind::Var:
      return true;
    case FuncExpr::Kind::Const:
      return a->value == b->value;
    case FuncExpr::Kind::Neg:
    case FuncExpr::Kind::Abs:
      return expr_equal(a->lhs, b->lhs);
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

Rational eval_exact(const FuncExpr& e, const Rational& x) {
  using K = FuncExpr::Kind;
  switch (e.kind) {
    case K::Var:
      return x;
    case K::Const:
      return e.value;
    case K::Neg:
      return -eval_exact(*e.lhs, x);
    case K::Abs:
      return abs(eval_exact(*e.lhs, x));
    case K::Add:
      return eval_exact(*e.lhs, x) + eval_exact(*e.rhs, x);
    case K::Sub:
      return eval_exact(*e.lhs, x) - eval_exact(*e.rhs, x);
    case K::Mul:
      return eval_exact(*e.lhs, x) * eval_exact(*e.rhs, x);
    case K::Min:
      return min(eval_exact(*e.lhs, x), eval_exact(*e.rhs, x));
    case K::Max:
      return max(eval_exact(*e.lhs, x), eval_exact(*e.rhs, x));
  }
  throw Error("unreachable expression kind");
}

RatInterval eval_range(const FuncExpr& e, const RatInterval& I) {
  using K = FuncExpr::Kind;
  switch (e.kind) {
    case K::Var:
      return I;
    case K::Const:
      return RatInterval::point(e.value);
    case K::Neg:
      return -eval_range(*e.lhs, I);
    case K::Abs:
      return abs(eval_range(*e.lhs, I));
    case K::Add:
      return eval_range(*e.lhs, I) + eval_range(*e.rhs, I);
    case K::Sub:
      return eval_range(*e.lhs, I) - eval_range(*e.rhs, I);
    case K::Mul:
      return eval_range(*e.lhs, I) * eval_range(*e.rhs, I);
    case K::Min:
      return min(eval_range(*e.lhs, I), eval_range(*e.rhs, I));
    case K::Max:
      return max(eval_range(*e.lhs, I), eval_range(*e.rhs, I));
  }
  throw Error("unreachable expression kind");
}

namespace {

// Precedence: add/sub 1, mul 2, unary 3, atoms 4.
int precedence(FuncExpr::Kind k) {
  using K = FuncExpr::Kind;
  switch (k) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
      return 2;
    case K::Neg:
      return 3;
    default:
      return 4;
  }
}

void print(const FuncExpr& e, int min_prec, std::string& out) {
  using K = FuncExpr::Kind;
  const int prec = precedence(e.kind);
  const bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (e.kind) {
    case K::Var:
      out += 'x';
      break;
    case K::Const:
      out += e.value.str();
      break;
    case K::Neg:
      out += '-';
      // "-c" would re-parse as a negative literal, losing the node.
      if (e.lhs->kind == K::Const) {
        out += '(';
        print(*e.lhs, 1, out);
        out += ')';
      } else {
        print(*e.lhs, 4, out);
      }
      break;
    case K::Abs:
      out += "abs(";
      print(*e.lhs, 1, out);
      out += ')';
      break;
    case K::Add:
    case K::Sub:
      print(*e.lhs, prec, out);
      out += e.kind == K::Add ? " + " : " - ";
      print(*e.rhs, prec + 1, out);
      break;
    case K::Mul:
      print(*e.lhs, prec, out);
      out += '*';
      print(*e.rhs, prec + 1, out);
      break;
    case K::Min:
    case K::Max:
      out += e.kind == K::Min ? "min(" : "max(";
      print(*e.lhs, 1, out);
      out += ", ";
      print(*e.rhs, 1, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

struct Token {
  enum class Type { Number, Ident, Plus, Minus, Star, LParen, RParen, Comma, End };
  Type type;
  Rational number;
  std::string ident;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, current_.line, current_.column);
  }

private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    current_ = Token{Token::Type::End, Rational(0), "", line_, col_};
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    auto single = [&](Token::Type t) {
      current_.type = t;
      ++pos_;
      ++col_;
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.type = Token::Type::Number;
      current_.number = lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      current_.type = Token::Type::Ident;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        current_.ident += text_[pos_];
        ++pos_;
        ++col_;
      }
      return;
    }
    switch (c) {
      case '+': single(Token::Type::Plus); return;
      case '-': single(Token::Type::Minus); return;
      case '*': single(Token::Type::Star); return;
      case '(': single(Token::Type::LParen); return;
      case ')': single(Token::Type::RParen); return;
      case ',': single(Token::Type::Comma); return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  Rational lex_number() {
    Int num = lex_digits();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      ++col_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected digits after '/'", line_, col_);
      Int den = lex_digits();
      if (den == 0) throw ParseError("zero denominator", current_.line, current_.column);
      return Rational(num, den);
    }
    return Rational(num);
  }

  Int lex_digits() {
    Int v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
      ++col_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_{Token::Type::End, Rational(0), "", 1, 1};
};

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (lex_.peek().type != Token::Type::End) lex_.fail("trailing input");
    return e;
  }

private:
  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      const auto t = lex_.peek().type;
      if (t == Token::Type::Plus) {
        lex_.take();
        e = FuncExpr::add(e, term());
      } else if (t == Token::Type::Minus) {
        lex_.take();
        e = FuncExpr::sub(e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (lex_.peek().type == Token::Type::Star) {
      lex_.take();
      e = FuncExpr::mul(e, factor());
    }
    return e;
  }

  ExprPtr factor() {
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      // Fold a leading minus into a numeric literal so "-1/2" is a constant.
      if (lex_.peek().type == Token::Type::Number)
        return FuncExpr::constant(-lex_.take().number);
      return FuncExpr::neg(factor());
    }
    return primary();
  }

  ExprPtr primary() {
    const Token t = lex_.peek();
    switch (t.type) {
      case Token::Type::Number:
        lex_.take();
        return FuncExpr::constant(t.number);
      case Token::Type::LParen: {
        lex_.take();
        ExprPtr e = expr();
        expect(Token::Type::RParen, "expected ')'");
        return e;
      }
      case Token::Type::Ident: {
        lex_.take();
        if (t.ident == "x") return FuncExpr::var();
        if (t.ident == "abs") {
          expect(Token::Type::LParen, "expected '(' after abs");
          ExprPtr e = expr();
          expect(Token::Type::RParen, "expected ')'");
          return FuncExpr::abs(e);
        }
        if (t.ident == "min" || t.ident == "max") {
          expect(Token::Type::LParen, "expected '(' after " + t.ident);
          ExprPtr a = expr();
          expect(Token::Type::Comma, "expected ','");
          ExprPtr b = expr();
          expect(Token::Type::RParen, "expected ')'");
          return t.ident == "min" ? FuncExpr::min(a, b) : FuncExpr::max(a, b);
        }
        throw ParseError("unknown identifier '" + t.ident + "'", t.line, t.column);
      }
      default:
        lex_.fail("expected expression");
    }
  }

  void expect(Token::Type type, const std::string& msg) {
    if (lex_.peek().type != type) lex_.fail(msg);
    lex_.take();
  }

  Lexer lex_;
};

}  // namespace

std::string to_text(const FuncExpr& e) {
  std::string out;
  print(e, 1, out);
  return out;
}

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

RatInterval eval_interval(const CFunc& f, const RatInterval& I) {
  if (!f.domain.contains(I))
    throw DomainEscape("interval " + I.str() + " outside domain " + f.domain.str());
  return eval_range(*f.expr, I);
}

CReal eval_at(const CFunc& f, const CReal& x) {
  // Shallow domain check at precision 4, trusted thereafter.
  const Rational a4 = x.approx(4);
  const Rational slack = Rational::pow2(-4);
  if (a4 < f.domain.lo() - slack || a4 > f.domain.hi() + slack)
    throw DomainEscape("point outside domain " + f.domain.str());
  const CFunc g = f;
  return CReal::from_fn(
      "eval(" + to_text(*f.expr) + ", " + x.provenance() + ")", [g, x](unsigned n) {
        const Rational target = Rational::pow2(-static_cast<long>(n));
        for (unsigned m = n;; ++m) {
          const Rational eps = Rational::pow2(-static_cast<long>(m));
          const Rational a = x.approx(m);
          auto I = intersect(RatInterval(a - eps, a + eps), g.domain);
          if (!I) throw DomainEscape("point escaped domain " + g.domain.str());
          const RatInterval out = eval_range(*g.expr, *I);
          if (out.width() <= target) return out.midpoint();
        }
      });
}

namespace {

struct LipInfo {
  Rational slope;      // Lipschitz bound on the domain
  RatInterval range;   // enclosure of the values on the domain
};

Rational magnitude(const RatInterval& r) { return max(abs(r.lo()), abs(r.hi())); }

LipInfo lip(const FuncExpr& e, const RatInterval& domain) {
  using K = FuncExpr::Kind;
  switch (e.kind) {
    case K::Var:
      return {Rational(1), domain};
    case K::Const:
      return {Rational(0), RatInterval::point(e.value)};
    case K::Neg: {
      LipInfo a = lip(*e.lhs, domain);
      return {a.slope, -a.range};
    }
    case K::Abs: {
      LipInfo a = lip(*e.lhs, domain);
      return {a.slope, abs(a.range)};
    }
    case K::Add: {
      LipInfo a = lip(*e.lhs, domain), b = lip(*e.rhs, domain);
      return {a.slope + b.slope, a.range + b.range};
    }
    case K::Sub: {
      LipInfo a = lip(*e.lhs, domain), b = lip(*e.rhs, domain);
      return {a.slope + b.slope, a.range - b.range};
    }
    case K::Mul: {
      LipInfo a = lip(*e.lhs, domain), b = lip(*e.rhs, domain);
      return {a.slope * magnitude(b.range) + b.slope * magnitude(a.range),
              a.range * b.range};
    }
    case K::Min: {
      LipInfo a = lip(*e.lhs, domain), b = lip(*e.rhs, domain);
      return {max(a.slope, b.slope), min(a.range, b.range)};
    }
    case K::Max: {
      LipInfo a = lip(*e.lhs, domain), b = lip(*e.rhs, domain);
      return {max(a.slope, b.slope), max(a.range, b.range)};
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace

Rational lipschitz_bound(const CFunc& f) { return lip(*f.expr, f.domain).slope; }

LocalityOracle LocalityOracle::constant_radius(std::string name, Rational r) {
  if (r.sign() <= 0) throw InvariantViolation("oracle radius must be positive");
  return LocalityOracle{std::move(name), [r](const Rational&) { return r; }};
}

LocalityOracle LocalityOracle::table(std::string name,
                                     std::vector<std::pair<Rational, Rational>> entries) {
  if (entries.empty()) throw InvariantViolation("oracle table must be nonempty");
  for (const auto& [c, r] : entries)
    if (r.sign() <= 0) throw InvariantViolation("oracle radius must be positive");
  return LocalityOracle{std::move(name), [entries](const Rational& c) {
                          const std::pair<Rational, Rational>* best = &entries[0];
                          Rational best_dist = abs(c - entries[0].first);
                          for (const auto& entry : entries) {
                            const Rational d = abs(c - entry.first);
                            if (d < best_dist ||
                                (d == best_dist && entry.first < best->first)) {
                              best = &entry;
                              best_dist = d;
                            }
                          }
                          return best->second;
                        }};
}

}  // namespace cra
