#pragma once

#include <string>

#include <mpfr.h>

#include "kkit/bigrational.hpp"

namespace kkit {

inline constexpr int kDefaultPrecisionBits = 256;
inline constexpr double kDefaultTolerance = 1e-40;

/// RAII wrapper around an MPFR real. Binary operations produce a result at
/// the larger precision of the two operands.
class HpReal {
 public:
  explicit HpReal(int bits = kDefaultPrecisionBits);
  HpReal(long value, int bits);
  HpReal(const BigRational& value, int bits);
  HpReal(const HpReal& o);
  HpReal(HpReal&& o) noexcept;
  HpReal& operator=(const HpReal& o);
  HpReal& operator=(HpReal&& o) noexcept;
  ~HpReal();

  static HpReal pi(int bits);

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 40) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  HpReal operator-() const;
  HpReal& operator+=(const HpReal& o);
  HpReal& operator-=(const HpReal& o);
  HpReal& operator*=(const HpReal& o);
  HpReal& operator/=(const HpReal& o);
  friend HpReal operator+(HpReal a, const HpReal& b) { return a += b; }
  friend HpReal operator-(HpReal a, const HpReal& b) { return a -= b; }
  friend HpReal operator*(HpReal a, const HpReal& b) { return a *= b; }
  friend HpReal operator/(HpReal a, const HpReal& b) { return a /= b; }

  friend bool operator<(const HpReal& a, const HpReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const HpReal& a, const HpReal& b) { return b < a; }
  /// Bitwise identity of the stored values (not a tolerance comparison).
  friend bool operator==(const HpReal& a, const HpReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  void widen_to(int bits);
  mpfr_t v_;
};

HpReal sqrt(const HpReal& x);
HpReal abs(const HpReal& x);

/// Complex number with MPFR components. Compare only through a tolerance.
class ComplexHP {
 public:
  explicit ComplexHP(int bits = kDefaultPrecisionBits) : re_(bits), im_(bits) {}
  ComplexHP(HpReal re, HpReal im) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexHP(const BigRational& re, int bits) : re_(re, bits), im_(bits) {}

  /// exp(2*pi*i*k/m).
  static ComplexHP unit_root(long k, long m, int bits);

  const HpReal& re() const { return re_; }
  const HpReal& im() const { return im_; }
  int precision() const { return std::max(re_.precision(), im_.precision()); }

  ComplexHP conj() const { return ComplexHP(re_, -im_); }
  /// |z|^2
  HpReal norm() const { return re_ * re_ + im_ * im_; }
  HpReal abs() const { return sqrt(norm()); }

  ComplexHP operator-() const { return ComplexHP(-re_, -im_); }
  ComplexHP& operator+=(const ComplexHP& o);
  ComplexHP& operator-=(const ComplexHP& o);
  ComplexHP& operator*=(const ComplexHP& o);
  ComplexHP& operator*=(const HpReal& s);
  ComplexHP& operator/=(const HpReal& s);
  ComplexHP& operator/=(const ComplexHP& o);
  friend ComplexHP operator+(ComplexHP a, const ComplexHP& b) { return a += b; }
  friend ComplexHP operator-(ComplexHP a, const ComplexHP& b) { return a -= b; }
  friend ComplexHP operator*(ComplexHP a, const ComplexHP& b) { return a *= b; }
  friend ComplexHP operator*(ComplexHP a, const HpReal& s) { return a *= s; }
  friend ComplexHP operator/(ComplexHP a, const HpReal& s) { return a /= s; }
  friend ComplexHP operator/(ComplexHP a, const ComplexHP& b) { return a /= b; }

  /// "re+imi" with `digits` significant digits per component.
  std::string to_string(int digits = 40) const;

 private:
  HpReal re_;
  HpReal im_;
};

inline ComplexHP conj(const ComplexHP& z) { return z.conj(); }

/// |a - b| as a double (underflows to 0 only below ~1e-308).
double distance(const ComplexHP& a, const ComplexHP& b);
bool approx_equal(const ComplexHP& a, const ComplexHP& b, double tolerance);

}  // namespace kkit
