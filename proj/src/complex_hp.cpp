#include "kkit/complex_hp.hpp"

#include <algorithm>
#include <vector>

#include "kkit/errors.hpp"

namespace kkit {

namespace {
void check_bits(int bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) {
    throw DomainError("precision_bits out of range: " + std::to_string(bits));
  }
}
}  // namespace

HpReal::HpReal(int bits) {
  check_bits(bits);
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

HpReal::HpReal(long value, int bits) : HpReal(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }

HpReal::HpReal(const BigRational& value, int bits) : HpReal(bits) {
  mpfr_set_q(v_, value.raw().get_mpq_t(), MPFR_RNDN);
}

HpReal::HpReal(const HpReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

HpReal::HpReal(HpReal&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

HpReal& HpReal::operator=(const HpReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

HpReal& HpReal::operator=(HpReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

HpReal::~HpReal() { mpfr_clear(v_); }

HpReal HpReal::pi(int bits) {
  HpReal r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

void HpReal::widen_to(int bits) {
  if (bits > precision()) mpfr_prec_round(v_, bits, MPFR_RNDN);
}

std::string HpReal::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", std::max(0, digits - 1), v_);
  return std::string(buf.data());
}

HpReal HpReal::operator-() const {
  HpReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

HpReal& HpReal::operator+=(const HpReal& o) {
  widen_to(o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
HpReal& HpReal::operator-=(const HpReal& o) {
  widen_to(o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
HpReal& HpReal::operator*=(const HpReal& o) {
  widen_to(o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
HpReal& HpReal::operator/=(const HpReal& o) {
  if (o.is_zero()) throw DomainError("HpReal: division by zero");
  widen_to(o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HpReal sqrt(const HpReal& x) {
  HpReal r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

HpReal abs(const HpReal& x) {
  HpReal r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

ComplexHP ComplexHP::unit_root(long k, long m, int bits) {
  if (m <= 0) throw DomainError("unit_root: nonpositive order");
  long kk = k % m;
  if (kk < 0) kk += m;
  HpReal re(bits), im(bits);
  if (kk == 0) {
    mpfr_set_si(re.get(), 1, MPFR_RNDN);
    return ComplexHP(std::move(re), std::move(im));
  }
  // Guard bits keep the rounded angle from costing accuracy in sin/cos.
  HpReal angle = HpReal::pi(bits + 32);
  mpfr_mul_si(angle.get(), angle.get(), 2 * kk, MPFR_RNDN);
  mpfr_div_si(angle.get(), angle.get(), m, MPFR_RNDN);
  mpfr_sin_cos(im.get(), re.get(), angle.get(), MPFR_RNDN);
  return ComplexHP(std::move(re), std::move(im));
}

ComplexHP& ComplexHP::operator+=(const ComplexHP& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}
ComplexHP& ComplexHP::operator-=(const ComplexHP& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}
ComplexHP& ComplexHP::operator*=(const ComplexHP& o) {
  HpReal re = re_ * o.re_ - im_ * o.im_;
  HpReal im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}
ComplexHP& ComplexHP::operator*=(const HpReal& s) {
  re_ *= s;
  im_ *= s;
  return *this;
}
ComplexHP& ComplexHP::operator/=(const HpReal& s) {
  re_ /= s;
  im_ /= s;
  return *this;
}
ComplexHP& ComplexHP::operator/=(const ComplexHP& o) {
  const HpReal den = o.norm();
  *this *= o.conj();
  return *this /= den;
}

std::string ComplexHP::to_string(int digits) const {
  std::string im = im_.to_string(digits);
  if (im.front() != '-') im.insert(0, "+");
  return re_.to_string(digits) + im + "i";
}

double distance(const ComplexHP& a, const ComplexHP& b) { return (a - b).abs().to_double(); }

bool approx_equal(const ComplexHP& a, const ComplexHP& b, double tolerance) {
  return distance(a, b) <= tolerance;
}

}  // namespace kkit
