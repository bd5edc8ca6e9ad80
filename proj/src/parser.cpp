#include "liesym/parser.hpp"

#include <cctype>
#include <optional>

namespace liesym {

ParseContext ParseContext::symmetry_unknowns() {
  ParseContext ctx;
  const std::vector<std::string> args{"x", "t", "u"};
  ctx.unknown_functions["xi1"] = args;
  ctx.unknown_functions["xi2"] = args;
  ctx.unknown_functions["eta"] = args;
  return ctx;
}

namespace {

std::optional<Func> func_from_name(std::string_view name) {
  if (name == "exp") return Func::Exp;
  if (name == "log" || name == "ln") return Func::Log;
  if (name == "sin") return Func::Sin;
  if (name == "cos") return Func::Cos;
  if (name == "tan") return Func::Tan;
  if (name == "arctan" || name == "atan") return Func::Arctan;
  if (name == "sinh") return Func::Sinh;
  if (name == "cosh") return Func::Cosh;
  if (name == "sqrt") return Func::Sqrt;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : text_(text), ctx_(ctx) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  Symbol symbol_only() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string id = ident();
    if (id.empty()) fail("expected identifier");
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after symbol");
    return classify(id, start);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::raw_product({Expr(-1L), term()}));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::raw_sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        factors.push_back(Expr::raw_power(factor(), -1));
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::raw_product(std::move(factors));
  }

  Expr factor() {
    if (accept('-')) return Expr::raw_product({Expr(-1L), factor()});
    if (accept('+')) return factor();
    Expr b = base();
    if (accept('^')) return Expr::raw_power(b, exponent());
    return b;
  }

  Rational exponent() {
    if (accept('(')) {
      const bool neg = accept('-');
      skip_ws();
      Rational q = number_literal();
      if (accept('/')) {
        skip_ws();
        const Rational d = number_literal();
        if (d == 0) fail("zero denominator in exponent");
        q /= d;
      }
      expect(')');
      return neg ? Rational(-q) : q;
    }
    const bool neg = accept('-');
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected rational exponent");
    }
    Rational q = number_literal();
    return neg ? Rational(-q) : q;
  }

  Rational number_literal() {
    const std::size_t start = pos_;
    std::string digits;
    std::string frac;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_++];
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        frac += text_[pos_++];
      }
    }
    if (digits.empty() && frac.empty()) {
      pos_ = start;
      fail("expected number");
    }
    mpz_class num(digits + frac, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational q(num, den);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      bool neg = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        neg = text_[pos_] == '-';
        ++pos_;
      }
      std::string ex;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ex += text_[pos_++];
      }
      if (ex.empty()) {
        pos_ = save;
      } else {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, std::stoul(ex));
        if (neg) {
          q /= Rational(scale);
        } else {
          q *= Rational(scale);
        }
      }
    }
    q.canonicalize();
    return q;
  }

  std::string ident() {
    std::string id;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id += text_[pos_++];
      }
    }
    return id;
  }

  Symbol classify(const std::string& id, std::size_t start) {
    if (id == "x" || id == "t") return Symbol::independent(id);
    if (id == "u") return Symbol::dependent();
    if (id.rfind("u_", 0) == 0) {
      const std::string suffix = id.substr(2);
      if (suffix.empty()) throw ParseError(start, "malformed jet suffix in '" + id + "'");
      std::vector<std::string> index;
      for (char c : suffix) {
        if (c != 'x' && c != 't') throw ParseError(start, "malformed jet suffix in '" + id + "'");
        index.emplace_back(1, c);
      }
      return Symbol::jet(index);
    }
    // Unknown function or one of its derivatives.
    const auto us = id.find('_');
    const std::string head = us == std::string::npos ? id : id.substr(0, us);
    auto it = ctx_.unknown_functions.find(head);
    if (it != ctx_.unknown_functions.end()) {
      std::vector<std::string> index;
      if (us != std::string::npos) {
        for (char c : id.substr(us + 1)) {
          const std::string v(1, c);
          bool ok = false;
          for (const auto& a : it->second) ok = ok || a == v;
          if (!ok) throw ParseError(start, "malformed derivative suffix in '" + id + "'");
          index.push_back(v);
        }
        if (index.empty()) throw ParseError(start, "malformed derivative suffix in '" + id + "'");
      }
      return Symbol::unknown(head, it->second, index);
    }
    return Symbol::parameter(id);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr(number_literal());
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    const std::size_t start = pos_;
    const std::string id = ident();
    if (id.empty()) fail(std::string("unexpected '") + c + "'");
    if (peek() == '(') {
      if (auto f = func_from_name(id)) {
        expect('(');
        Expr arg = expr();
        expect(')');
        return Expr::raw_apply(*f, arg);
      }
      Symbol s = classify(id, start);
      if (s.kind != SymbolKind::Unknown) {
        throw ParseError(start, "unknown function '" + id + "'");
      }
      // Declared unknown applied to its argument list.
      expect('(');
      std::vector<std::string> args;
      do {
        skip_ws();
        const std::string a = ident();
        if (a.empty()) fail("expected argument name");
        args.push_back(a);
      } while (accept(','));
      expect(')');
      if (args != s.args) throw ParseError(start, "argument list does not match declaration of '" + s.name + "'");
      return Expr(s);
    }
    if (func_from_name(id)) throw ParseError(start, "function '" + id + "' requires an argument");
    return Expr(classify(id, start));
  }

  std::string_view text_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_raw(std::string_view text, const ParseContext& ctx) {
  return Parser(text, ctx).parse_all();
}

Expr parse(std::string_view text, const ParseContext& ctx) { return normalize(parse_raw(text, ctx)); }

Symbol parse_symbol(std::string_view text, const ParseContext& ctx) {
  return Parser(text, ctx).symbol_only();
}

}  // namespace liesym
