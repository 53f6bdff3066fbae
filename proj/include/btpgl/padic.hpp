#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "btpgl/scalar.hpp"

namespace btpgl {

/// Fixes the prime p, hence R = Z_(p), the residue field F_p and the
/// uniformizer pi = p. The residue cardinality q equals p.
class PAdicContext {
 public:
  explicit PAdicContext(std::int64_t p);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return p_; }
  const mpz_class& prime() const { return prime_; }

  /// p^e as a Scalar (e may be negative).
  Scalar uniformizer_power(std::int64_t e) const { return Scalar::power(prime_, e); }

  friend bool operator==(const PAdicContext& a, const PAdicContext& b) { return a.p_ == b.p_; }

 private:
  std::int64_t p_;
  mpz_class prime_;
};

/// Integers extended by +infinity, which orders above every integer.
class Valuation {
 public:
  constexpr Valuation(std::int64_t v) : v_(v), infinite_(false) {}  // NOLINT
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  std::int64_t value() const;

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.v_ <=> b.v_;
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.v_ + b.v_);
  }

  std::string to_string() const;

 private:
  constexpr Valuation() : v_(0), infinite_(true) {}
  std::int64_t v_;
  bool infinite_;
};

/// Exponent of p in x; +infinity for x = 0.
Valuation val(const PAdicContext& ctx, const Scalar& x);

/// Exponent of p in a nonzero integer.
std::int64_t val(const PAdicContext& ctx, const mpz_class& x);

/// x = p^val(x) * unit_part(x). Requires x != 0.
Scalar unit_part(const PAdicContext& ctx, const Scalar& x);

/// Image of x in F_p, as an integer in [0, p). Throws NegativeValuation if
/// x is not p-integral.
std::int64_t residue(const PAdicContext& ctx, const Scalar& x);

/// Representative of x in Z/p^e Z, in [0, p^e). Requires e >= 1 and x p-integral.
mpz_class residue_mod_power(const PAdicContext& ctx, const Scalar& x, std::int64_t e);

inline bool is_integral(const PAdicContext& ctx, const Scalar& x) { return val(ctx, x) >= Valuation(0); }
inline bool is_unit(const PAdicContext& ctx, const Scalar& x) { return val(ctx, x) == Valuation(0); }

}  // namespace btpgl
