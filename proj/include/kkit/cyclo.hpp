#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "kkit/bigrational.hpp"
#include "kkit/complex_hp.hpp"

namespace kkit {

bool is_prime(long n);
/// base^exp for small nonnegative exponents; throws on overflow.
long ipow(long base, int exp);

/// Exact element of Z[zeta] (with rational coefficients), zeta a primitive
/// p^ell-th root of unity, stored in the canonical basis
/// {zeta^j : 0 <= j < phi(p^ell)}.
///
/// Exponents j >= phi(p^ell) are eliminated with the minimal polynomial
///   zeta^{(p-1)p^{ell-1} + m} = -sum_{k=0}^{p-2} zeta^{k p^{ell-1} + m},
/// so equality of values is equality of coefficient vectors.
class CycloNumber {
 public:
  /// The zero element of Q(zeta_{p^ell}).
  CycloNumber(int p, int ell);

  static CycloNumber from_rational(int p, int ell, const BigRational& value);
  /// sum_k counts[k] * zeta^k, k ranging over [0, p^ell).
  static CycloNumber from_exponent_counts(int p, int ell, std::span<const long> counts);
  /// sum_k coeffs[k] * zeta^k for a coefficient vector of length p^ell.
  static CycloNumber from_dense(int p, int ell, std::vector<BigRational> coeffs);

  int p() const { return p_; }
  int ell() const { return ell_; }
  /// p^ell, the order of zeta.
  long order() const { return order_; }
  /// phi(p^ell), the dimension of the canonical basis.
  long degree() const { return static_cast<long>(coeffs_.size()); }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;

  /// Re-expresses the number in Q(zeta_{p^target_ell}) via
  /// zeta_{p^ell} = zeta_{p^target}^{p^{target-ell}}.
  CycloNumber embed(int target_ell) const;

  ComplexHP to_complex(int bits = kDefaultPrecisionBits) const;

  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& o);
  CycloNumber& operator-=(const CycloNumber& o);
  CycloNumber& operator*=(const CycloNumber& o);
  CycloNumber& operator*=(const BigRational& s);
  CycloNumber& operator/=(const BigRational& s);
  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator*(CycloNumber a, const BigRational& s) { return a *= s; }
  friend CycloNumber operator/(CycloNumber a, const BigRational& s) { return a /= s; }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);

 private:
  void check_same_field(const CycloNumber& o) const;

  int p_;
  int ell_;
  long order_;
  std::vector<BigRational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloNumber& z);

/// Raised by cyclo_to_rational when a coefficient of zeta^j, j > 0, is nonzero.
class NotRational : public std::runtime_error {
 public:
  explicit NotRational(std::vector<BigRational> coeffs);
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

 private:
  std::vector<BigRational> coeffs_;
};

/// zeta^{k mod p^ell} in canonical form.
CycloNumber root_of_unity(int p, int ell, long k);
BigRational cyclo_to_rational(const CycloNumber& z);
/// Complex conjugation zeta^k -> zeta^{-k}.
CycloNumber cyclo_conj(const CycloNumber& z);
inline CycloNumber conj(const CycloNumber& z) { return cyclo_conj(z); }

}  // namespace kkit
