#include "dq/rational.hpp"

#include <cctype>

#include "dq/error.hpp"

namespace dq {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_mpz = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t);
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw DomainError("malformed rational '" + s + "'");
    return Rational(to_mpz(s), mpz_class(1));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw DomainError("malformed rational '" + s + "'");
  return Rational(to_mpz(num), to_mpz(den));
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r, mpz_class(1));
}

}  // namespace dq
