#include "kkit/bigrational.hpp"

#include <ostream>

#include "kkit/errors.hpp"

namespace kkit {

BigRational::BigRational(long num, long den) {
  if (den == 0) throw DomainError("BigRational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRational::BigRational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

BigRational BigRational::parse(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw DomainError("BigRational: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw DomainError("BigRational: cannot parse '" + s + "'");
  if (q.get_den() == 0) throw DomainError("BigRational: zero denominator in '" + s + "'");
  q.canonicalize();
  return BigRational(std::move(q));
}

BigRational BigRational::abs() const { return BigRational(mpq_class(::abs(v_))); }

BigRational BigRational::pow(int exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw DomainError("BigRational: negative power of zero");
    return BigRational(1) / pow(-exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return BigRational(mpq_class(num, den));
}

std::string BigRational::to_decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpz_class absnum = ::abs(v_.get_num());
  mpz_class scaled = absnum * scale / v_.get_den();
  std::string body = scaled.get_str();
  if (body.size() <= static_cast<size_t>(digits)) {
    body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
  }
  std::string out = (sign() < 0 ? "-" : "");
  out += body.substr(0, body.size() - static_cast<size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<size_t>(digits));
  return out;
}

BigRational& BigRational::operator+=(const BigRational& o) {
  v_ += o.v_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  v_ -= o.v_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  v_ *= o.v_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("BigRational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

}  // namespace kkit
