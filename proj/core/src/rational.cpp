#include "rhilab/rational.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "rhilab/errors.hpp"

namespace rhilab {

namespace {

mpz_class pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return p;
}

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') return false;
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  const auto slash = text.find('/');
  mpz_class num, den{1};
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(text, num)
                      : parse_integer(text.substr(0, slash), num) &&
                            parse_integer(text.substr(slash + 1), den) &&
                            text[slash + 1] != '-' && text[slash + 1] != '+';
  if (!ok) throw ParseError("malformed rational '" + std::string(text) + "' (expected p or p/q)");
  if (den == 0) throw ParseError("rational '" + std::string(text) + "' has zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_long_double(long double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite value to a rational");
  if (x == 0.0L) return Rational(0);
  int e = 0;
  long double m = std::frexp(std::fabs(x), &e);  // m in [1/2, 1)
  const auto mant = static_cast<unsigned long long>(std::ldexp(m, 64));
  mpq_class q{mpz_class(static_cast<unsigned long>(mant))};
  const long shift = static_cast<long>(e) - 64;
  if (shift >= 0)
    q *= pow2(shift);
  else
    q /= pow2(-shift);
  q.canonicalize();
  if (x < 0) q = -q;
  return Rational(std::move(q));
}

Rational Rational::approximate(long double x, int bits) {
  if (!std::isfinite(x)) throw DomainError("cannot approximate a non-finite value");
  if (x == 0.0L) return Rational(0);
  if (bits < 1 || bits > 64) throw DomainError("approximation bits must be in [1, 64]");
  int e = 0;
  long double m = std::frexp(x, &e);
  long double scaled = std::nearbyint(std::ldexp(m, bits));
  return from_long_double(std::ldexp(scaled, e - bits));
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

long double Rational::to_long_double() const {
  const int s = sign();
  if (s == 0) return 0.0L;
  mpz_class num = ::abs(q_.get_num());
  const mpz_class& den = q_.get_den();
  const long a = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long b = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long shift = 63 - a + b;  // quotient lands in [2^62, 2^64)
  mpz_class quo;
  if (shift >= 0) {
    mpz_class scaled = num << static_cast<mp_bitcnt_t>(shift);
    mpz_tdiv_q(quo.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_class scaled = den << static_cast<mp_bitcnt_t>(-shift);
    mpz_tdiv_q(quo.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  const auto bits = static_cast<unsigned long long>(mpz_get_ui(quo.get_mpz_t()));
  const long double v = std::ldexp(static_cast<long double>(bits), static_cast<int>(-shift));
  return s < 0 ? -v : v;
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(mpq_class(1) / q_);
}

Rational Rational::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(k));
  return Rational(mpq_class(n, d));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace rhilab
