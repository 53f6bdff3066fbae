#include "btpgl/scalar.hpp"

#include <ostream>

#include "btpgl/errors.hpp"

namespace btpgl {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar::Scalar(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(parse_integer(text));
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Scalar(num, den);
}

std::string Scalar::to_string() const { return q_.get_str(10); }

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Scalar Scalar::power(const mpz_class& p, std::int64_t e) {
  mpz_class r;
  std::uint64_t magnitude = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), magnitude);
  if (e >= 0) return Scalar(r);
  return Scalar(mpz_class(1), r);
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

}  // namespace btpgl
