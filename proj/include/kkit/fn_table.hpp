#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kkit/complex_hp.hpp"
#include "kkit/cyclo.hpp"
#include "kkit/errors.hpp"
#include "kkit/residue_ring.hpp"

namespace kkit {

/// A point a = (a_1, ..., a_N) of R^N, coordinates reduced mod p^ell.
using Point = std::vector<long>;

inline constexpr long kDefaultMaxTable = 1L << 20;

/// The active size guard: KKIT_MAX_TABLE if set, else 2^20.
long max_table_size();
/// Throws SizeGuardError when |R|^N exceeds the guard.
long checked_table_size(const RingSpec& spec, int N);

/// Mixed-radix index of a point, coordinate 1 most significant.
std::size_t point_index(const RingSpec& spec, const Point& a);
Point point_at(const RingSpec& spec, int N, std::size_t index);
std::string point_to_string(const Point& a);

/// An element g = (c, sigma) of (o^x)^N x| S_N acting on R^N by
/// (g a)_k = c_k a_{sigma^{-1}(k)}. perm[k] = sigma(k), 0-based.
struct GroupElement {
  std::vector<long> units;
  std::vector<int> perm;

  static GroupElement identity(int N);
  Point apply(const RingSpec& spec, const Point& a) const;
  Point apply_inverse(const RingSpec& spec, const Point& a) const;
};

/// Dense complex-valued function on R^N. T is ComplexHP or CycloNumber.
template <class T>
class FnTable {
 public:
  FnTable(RingSpec spec, int N, const T& fill)
      : spec_(spec), N_(N), values_(static_cast<std::size_t>(checked_table_size(spec, N)), fill) {}

  template <class F>
  static FnTable generate(RingSpec spec, int N, const T& fill, F f) {
    FnTable t(spec, N, fill);
    for (std::size_t i = 0; i < t.size(); ++i) t.values_[i] = f(point_at(spec, N, i));
    return t;
  }

  const RingSpec& spec() const { return spec_; }
  int N() const { return N_; }
  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& at(const Point& a) const { return values_[point_index(spec_, a)]; }
  T& at(const Point& a) { return values_[point_index(spec_, a)]; }
  const std::vector<T>& values() const { return values_; }

  FnTable& operator+=(const FnTable& o) {
    check_shape(o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  FnTable& operator-=(const FnTable& o) {
    check_shape(o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  template <class S>
  FnTable& scale(const S& s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  void check_shape(const FnTable& o) const {
    if (!(spec_ == o.spec_) || N_ != o.N_) throw DomainError("function tables of different shape");
  }

 private:
  RingSpec spec_;
  int N_;
  std::vector<T> values_;
};

using HPTable = FnTable<ComplexHP>;
using ExactTable = FnTable<CycloNumber>;

inline ComplexHP divided(ComplexHP z, long d, int bits) { return z / HpReal(d, bits); }
inline CycloNumber divided(CycloNumber z, long d, int) { return z / BigRational(d); }

/// <f, g> = |R|^{-N} sum_a f(a) conj(g(a)).
template <class T>
T inner_product(const FnTable<T>& f, const FnTable<T>& g, int bits = kDefaultPrecisionBits) {
  f.check_shape(g);
  T acc = f[0] * conj(g[0]);
  for (std::size_t i = 1; i < f.size(); ++i) acc += f[i] * conj(g[i]);
  return divided(acc, static_cast<long>(f.size()), bits);
}

/// x |-> f(b + x)
template <class T>
FnTable<T> translate(const FnTable<T>& f, const Point& b) {
  FnTable<T> out = f;
  const RingSpec& spec = f.spec();
  for (std::size_t i = 0; i < f.size(); ++i) {
    Point a = point_at(spec, f.N(), i);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = spec.reduce(a[k] + b[k]);
    out[i] = f.at(a);
  }
  return out;
}

/// (g . f)(x) = f(g^{-1} x)
template <class T>
FnTable<T> act(const GroupElement& g, const FnTable<T>& f) {
  FnTable<T> out = f;
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = f.at(g.apply_inverse(f.spec(), point_at(f.spec(), f.N(), i)));
  return out;
}

/// (f_1 (x) ... (x) f_N)(a) = prod_k f_k(a_k) for functions on R.
template <class T>
FnTable<T> tensor(const std::vector<const FnTable<T>*>& factors) {
  if (factors.empty()) throw DomainError("tensor of no factors");
  const RingSpec& spec = factors.front()->spec();
  const int N = static_cast<int>(factors.size());
  FnTable<T> out(spec, N, (*factors.front())[0]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point a = point_at(spec, N, i);
    T v = (*factors[0])[static_cast<std::size_t>(a[0])];
    for (int k = 1; k < N; ++k) v *= (*factors[static_cast<std::size_t>(k)])[static_cast<std::size_t>(a[k])];
    out[i] = v;
  }
  return out;
}

/// max_a |f(a) - g(a)|
double max_distance(const HPTable& f, const HPTable& g);
HPTable to_hp(const ExactTable& f, int bits);

}  // namespace kkit
