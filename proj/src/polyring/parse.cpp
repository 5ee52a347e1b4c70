#include <algorithm>
#include <cctype>
#include <sstream>

#include "dq/polyring.hpp"

namespace dq {

VariableNames::VariableNames(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw DomainError("duplicate variable name '" + names_[i] + "'");
}

VariableNames VariableNames::numbered(std::string_view prefix, std::size_t n, bool zero_based) {
  std::vector<std::string> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::string(prefix) + std::to_string(zero_based ? i : i + 1));
  return VariableNames(std::move(v));
}

long VariableNames::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<long>(it - names_.begin());
}

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ['^' integer]
// atom   := integer | name | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const VariableNames& vars, const PolyBindings* bindings)
      : text_(text), vars_(vars), bindings_(bindings) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

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

  Poly expr() {
    skip_ws();
    Poly acc(vars_.size());
    bool first = true;
    for (;;) {
      bool negate = false;
      if (accept('-')) {
        negate = true;
      } else if (accept('+')) {
      } else if (!first) {
        break;
      }
      Poly t = term();
      if (negate) acc -= t; else acc += t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant()) {
          pos_ = at;
          fail("division by a non-constant expression");
        }
        Rational c = d.constant_term();
        if (c.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        acc *= Rational(1) / c;
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("malformed exponent: expected a non-negative integer");
      auto digits = text_.substr(start, pos_ - start);
      if (digits.size() > 6) fail("exponent too large");
      return base.pow(static_cast<std::uint32_t>(std::stoul(std::string(digits))));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly::constant(vars_.size(), Rational(mpz_class(std::string(text_.substr(start, pos_ - start))),
                                                   mpz_class(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      auto name = text_.substr(start, pos_ - start);
      long idx = vars_.find(name);
      if (idx >= 0) return Poly::variable(vars_.size(), static_cast<std::size_t>(idx));
      if (bindings_ != nullptr) {
        auto it = bindings_->find(name);
        if (it != bindings_->end()) {
          if (it->second.arity() != vars_.size()) {
            pos_ = start;
            fail("'" + std::string(name) + "' lives in a ring with a different number of variables");
          }
          return it->second;
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const VariableNames& vars_;
  const PolyBindings* bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const VariableNames& vars, const PolyBindings* bindings) {
  return Parser(text, vars, bindings).parse();
}

std::string format_poly(const Poly& p, const VariableNames& vars, const MonomialOrder& order) {
  if (vars.size() != p.arity()) throw ArityError(p.arity(), vars.size(), "format_poly");
  if (p.is_zero()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [&](const auto* a, const auto* b) { return order.less(b->first, a->first); });

  std::ostringstream os;
  bool first = true;
  for (const auto* t : terms) {
    const auto& [m, c] = *t;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.is_one() || !mag.is_one()) {
      os << mag.to_string();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.arity(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << vars[i];
      if (m[i] > 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

std::string format_poly(const Poly& p, const VariableNames& vars) {
  return format_poly(p, vars, MonomialOrder::degrevlex(p.arity()));
}

}  // namespace dq
