#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace btpgl {

/// An exact element of Q, always held in lowest terms with positive
/// denominator. Used as the model of the p-adic field K = Q_p.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpz_class& value) : q_(value) {}
  explicit Scalar(const mpq_class& value) : q_(value) { q_.canonicalize(); }
  Scalar(const mpz_class& num, const mpz_class& den);

  /// Parses "a" or "a/b" with an optional leading minus; b must be nonzero.
  static Scalar parse(std::string_view text);

  /// Decimal "a" or "a/b" in lowest terms.
  std::string to_string() const;

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(mpq_class(-q_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// p^e for any integer e.
  static Scalar power(const mpz_class& p, std::int64_t e);

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& x);

}  // namespace btpgl
