#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace rhilab {

/// Exact rational number in lowest terms (denominator > 0).
///
/// Thin value wrapper around GMP's mpq_class. The wrapper exists so that
/// arithmetic never yields GMP expression templates (which interact badly
/// with `auto`) and so that parsing/printing follow the "p/q" wire format.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) {  // NOLINT: implicit by design of the number tower
    if constexpr (std::is_signed_v<T>)
      q_ = static_cast<long>(n);
    else
      q_ = static_cast<unsigned long>(n);
  }
  Rational(long long num, long long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "-p" or "p/q". Throws ParseError on malformed text or q = 0.
  static Rational parse(std::string_view text);

  /// Exact conversion of a finite long double (every finite binary float is a dyadic rational).
  static Rational from_long_double(long double x);

  /// Rounds x to a dyadic rational with `bits` significant bits.
  static Rational approximate(long double x, int bits);

  std::string str() const;  ///< "p" or "p/q"
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Rational abs() const { return Rational(::abs(q_)); }
  Rational inverse() const;
  Rational pow(int k) const;

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class q_{0};
};

inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// Midpoint (a+b)/2.
inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

}  // namespace rhilab
