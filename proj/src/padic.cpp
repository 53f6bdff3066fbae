#include "btpgl/padic.hpp"

#include "btpgl/errors.hpp"

namespace btpgl {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t strip(const mpz_class& prime, const mpz_class& x) {
  if (x == 0) return 0;
  mpz_class rest;
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

}  // namespace

PAdicContext::PAdicContext(std::int64_t p) : p_(p), prime_(static_cast<long>(p)) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
}

std::int64_t Valuation::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "valuation of zero has no integer value");
  return v_;
}

std::string Valuation::to_string() const { return infinite_ ? "inf" : std::to_string(v_); }

Valuation val(const PAdicContext& ctx, const Scalar& x) {
  if (x.is_zero()) return Valuation::infinity();
  return Valuation(strip(ctx.prime(), x.raw().get_num()) - strip(ctx.prime(), x.raw().get_den()));
}

std::int64_t val(const PAdicContext& ctx, const mpz_class& x) { return strip(ctx.prime(), x); }

Scalar unit_part(const PAdicContext& ctx, const Scalar& x) {
  if (x.is_zero()) throw Error(ErrorCode::InvalidArgument, "unit part of zero");
  return x * ctx.uniformizer_power(-val(ctx, x).value());
}

std::int64_t residue(const PAdicContext& ctx, const Scalar& x) {
  return residue_mod_power(ctx, x, 1).get_si();
}

mpz_class residue_mod_power(const PAdicContext& ctx, const Scalar& x, std::int64_t e) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "residue modulus exponent must be positive");
  if (val(ctx, x) < Valuation(0)) {
    throw Error(ErrorCode::NegativeValuation, x.to_string() + " is not p-integral");
  }
  mpz_class modulus;
  mpz_pow_ui(modulus.get_mpz_t(), ctx.prime().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_class inv;
  mpz_class den = x.raw().get_den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  mpz_class r = x.raw().get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace btpgl
