#include "kkit/cyclo.hpp"

#include <limits>
#include <ostream>
#include <sstream>

#include "kkit/errors.hpp"

namespace kkit {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long ipow(long base, int exp) {
  if (exp < 0) throw DomainError("ipow: negative exponent");
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && std::abs(r) > std::numeric_limits<long>::max() / std::abs(base)) {
      throw DomainError("ipow: overflow");
    }
    r *= base;
  }
  return r;
}

namespace {

void validate(int p, int ell) {
  if (!is_prime(p)) throw DomainError("cyclotomic field: p = " + std::to_string(p) + " is not prime");
  if (ell < 1) throw DomainError("cyclotomic field: ell must be >= 1");
}

// Folds exponents in [phi, p^ell) back into the canonical range.
std::vector<BigRational> reduce(int p, std::vector<BigRational> dense) {
  const long order = static_cast<long>(dense.size());
  const long step = order / p;  // p^{ell-1}
  const long phi = order - step;
  for (long j = phi; j < order; ++j) {
    if (dense[j].is_zero()) continue;
    const long m = j - phi;
    for (int k = 0; k <= p - 2; ++k) dense[k * step + m] -= dense[j];
  }
  dense.resize(static_cast<size_t>(phi));
  return dense;
}

}  // namespace

CycloNumber::CycloNumber(int p, int ell) : p_(p), ell_(ell) {
  validate(p, ell);
  order_ = ipow(p, ell);
  coeffs_.assign(static_cast<size_t>(order_ - order_ / p), BigRational(0));
}

CycloNumber CycloNumber::from_dense(int p, int ell, std::vector<BigRational> coeffs) {
  CycloNumber z(p, ell);
  if (static_cast<long>(coeffs.size()) != z.order_) {
    throw DomainError("from_dense: expected p^ell coefficients");
  }
  z.coeffs_ = reduce(p, std::move(coeffs));
  return z;
}

CycloNumber CycloNumber::from_rational(int p, int ell, const BigRational& value) {
  CycloNumber z(p, ell);
  z.coeffs_[0] = value;
  return z;
}

CycloNumber CycloNumber::from_exponent_counts(int p, int ell, std::span<const long> counts) {
  validate(p, ell);
  const long order = ipow(p, ell);
  if (static_cast<long>(counts.size()) != order) {
    throw DomainError("from_exponent_counts: expected p^ell counts");
  }
  // Reduce in machine integers first; counts are small in practice.
  std::vector<long> dense(counts.begin(), counts.end());
  const long step = order / p;
  const long phi = order - step;
  for (long j = phi; j < order; ++j) {
    if (dense[j] == 0) continue;
    for (int k = 0; k <= p - 2; ++k) dense[k * step + j - phi] -= dense[j];
  }
  CycloNumber z(p, ell);
  for (long j = 0; j < phi; ++j) z.coeffs_[j] = BigRational(dense[j]);
  return z;
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool CycloNumber::is_rational() const {
  for (size_t j = 1; j < coeffs_.size(); ++j) {
    if (!coeffs_[j].is_zero()) return false;
  }
  return true;
}

CycloNumber CycloNumber::embed(int target_ell) const {
  if (target_ell < ell_) throw DomainError("embed: target level below current level");
  const long target_order = ipow(p_, target_ell);
  const long stride = target_order / order_;
  std::vector<BigRational> dense(static_cast<size_t>(target_order), BigRational(0));
  for (size_t j = 0; j < coeffs_.size(); ++j) dense[j * stride] = coeffs_[j];
  return from_dense(p_, target_ell, std::move(dense));
}

ComplexHP CycloNumber::to_complex(int bits) const {
  ComplexHP sum(bits);
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    sum += ComplexHP::unit_root(static_cast<long>(j), order_, bits) * HpReal(coeffs_[j], bits);
  }
  return sum;
}

void CycloNumber::check_same_field(const CycloNumber& o) const {
  if (p_ != o.p_ || ell_ != o.ell_) throw DomainError("CycloNumber: mismatched cyclotomic fields");
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
  check_same_field(o);
  for (size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
  check_same_field(o);
  for (size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& o) {
  check_same_field(o);
  std::vector<BigRational> dense(static_cast<size_t>(order_), BigRational(0));
  const size_t n = coeffs_.size();
  for (size_t i = 0; i < n; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      dense[(i + j) % static_cast<size_t>(order_)] += coeffs_[i] * o.coeffs_[j];
    }
  }
  coeffs_ = reduce(p_, std::move(dense));
  return *this;
}

CycloNumber& CycloNumber::operator*=(const BigRational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

CycloNumber& CycloNumber::operator/=(const BigRational& s) {
  if (s.is_zero()) throw DomainError("CycloNumber: division by zero");
  for (auto& c : coeffs_) c /= s;
  return *this;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  return a.p_ == b.p_ && a.ell_ == b.ell_ && a.coeffs_ == b.coeffs_;
}

std::ostream& operator<<(std::ostream& os, const CycloNumber& z) {
  bool first = true;
  for (size_t j = 0; j < z.coeffs().size(); ++j) {
    const auto& c = z.coeffs()[j];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << c << ")";
    if (j > 0) os << "*z^" << j;
    first = false;
  }
  if (first) os << "0";
  return os;
}

NotRational::NotRational(std::vector<BigRational> coeffs)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "cyclotomic number is not rational; coefficients [";
        for (size_t j = 0; j < coeffs.size(); ++j) msg << (j ? ", " : "") << coeffs[j];
        msg << "]";
        return msg.str();
      }()),
      coeffs_(std::move(coeffs)) {}

CycloNumber root_of_unity(int p, int ell, long k) {
  validate(p, ell);
  const long order = ipow(p, ell);
  std::vector<long> counts(static_cast<size_t>(order), 0);
  long e = k % order;
  if (e < 0) e += order;
  counts[static_cast<size_t>(e)] = 1;
  return CycloNumber::from_exponent_counts(p, ell, counts);
}

BigRational cyclo_to_rational(const CycloNumber& z) {
  if (!z.is_rational()) throw NotRational(z.coeffs());
  return z.coeffs()[0];
}

CycloNumber cyclo_conj(const CycloNumber& z) {
  const long order = z.order();
  std::vector<BigRational> dense(static_cast<size_t>(order), BigRational(0));
  for (size_t j = 0; j < z.coeffs().size(); ++j) {
    dense[static_cast<size_t>((order - static_cast<long>(j)) % order)] = z.coeffs()[j];
  }
  return CycloNumber::from_dense(z.p(), z.ell(), std::move(dense));
}

}  // namespace kkit
