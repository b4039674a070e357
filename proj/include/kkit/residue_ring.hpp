#pragma once

#include <climits>
#include <string>
#include <vector>

#include "kkit/complex_hp.hpp"
#include "kkit/cyclo.hpp"

namespace kkit {

/// Valuation levels. kInfinity is v(0); kMinusInfinity is the dual valuation
/// of the trivial character and the index of the full unit group.
using Level = int;
inline constexpr Level kInfinity = INT_MAX;
inline constexpr Level kMinusInfinity = INT_MIN;

std::string level_to_string(Level r);

/// R = Z/p^ell. Its residue field has order q = p.
class RingSpec {
 public:
  RingSpec(int p, int ell);

  int p() const { return p_; }
  int q() const { return p_; }
  int ell() const { return ell_; }
  long order() const { return order_; }
  /// The fixed uniformizer pi, realized as the residue of p.
  long uniformizer_power(int s) const;
  /// I_r = |R^_r| = q^r (q-1); I_{-inf} = I_{-1} = 1.
  long orbit_count(Level r) const;
  long reduce(long a) const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  int p_;
  int ell_;
  long order_;
};

struct RingElem {
  RingSpec spec;
  long value;

  RingElem(RingSpec s, long v) : spec(s), value(s.reduce(v)) {}
  friend bool operator==(const RingElem&, const RingElem&) = default;
};

Level valuation(const RingSpec& spec, long a);
inline Level valuation(const RingElem& a) { return valuation(a.spec, a.value); }

/// chi_b(a) = zeta^{b a}, zeta = exp(2 pi i / p^ell). theta = chi_1.
struct AddChar {
  RingSpec spec;
  long index;

  AddChar(RingSpec s, long b) : spec(s), index(s.reduce(b)) {}
  /// Exponent e with chi(a) = zeta^e.
  long exponent(long a) const { return spec.reduce(index * spec.reduce(a)); }
  CycloNumber value(long a) const { return root_of_unity(spec.p(), spec.ell(), exponent(a)); }
  bool is_trivial() const { return index == 0; }
  AddChar operator*(const AddChar& o) const { return AddChar(spec, index + o.index); }
  AddChar inverse() const { return AddChar(spec, -index); }
  friend bool operator==(const AddChar&, const AddChar&) = default;
};

/// max{ v(a) : chi(a) != 1 } by direct scan, kMinusInfinity for the trivial character.
Level dual_valuation(const AddChar& chi);
/// ell - 1 - v(b) for chi_b (kMinusInfinity for b = 0).
Level dual_valuation_of_index(const RingSpec& spec, long b);

/// R_r = { a : v(a) = r }, r in {0..ell-1, kInfinity}.
std::vector<RingElem> orbit_Rr(const RingSpec& spec, Level r);
/// R^_r = { chi : dual_valuation(chi) = r }, r in {kMinusInfinity, 0..ell-1}.
std::vector<AddChar> orbit_Rhat_r(const RingSpec& spec, Level r);
/// R^|^s: the union of R^_u over u <= s, including the trivial character.
std::vector<AddChar> dual_prefix(const RingSpec& spec, Level s);
/// The character of Z/p^{s+1} with index c, pulled back along R -> Z/p^{s+1}.
AddChar lift_character(const RingSpec& spec, int s, long c);

/// o^x_r = { 1 + a p^{r+1} }, the full unit group for kMinusInfinity.
std::vector<RingElem> unit_subgroup(const RingSpec& spec, Level r);

bool is_unit(const RingSpec& spec, long a);
long unit_inverse(const RingSpec& spec, long a);

/// A character xi of the unit group, with values exp(2 pi i phase(c)/modulus).
class UnitChar {
 public:
  /// phases[a] is the phase numerator at the unit a (-1 at non-units);
  /// roots[k] = exp(2 pi i k / modulus).
  UnitChar(RingSpec spec, Level level, long modulus, std::vector<long> phases,
           const std::vector<ComplexHP>& roots);

  const RingSpec& spec() const { return spec_; }
  /// Smallest r in {-inf, 0, ..., ell-1} with xi trivial on o^x_r.
  Level level() const { return level_; }
  long modulus() const { return modulus_; }
  /// Exact phase numerator of xi(c) for a unit c.
  long phase(long c) const;
  const ComplexHP& value(long c) const;
  bool is_trivial() const;

  friend bool operator==(const UnitChar& a, const UnitChar& b) {
    return a.spec_ == b.spec_ && a.phases_ == b.phases_;
  }

 private:
  RingSpec spec_;
  Level level_;
  long modulus_;
  std::vector<long> phases_;   // indexed by ring value; -1 at non-units
  std::vector<ComplexHP> values_;
};

/// The unit group (Z/p^ell)^x, its cyclic decomposition, and all of its
/// characters ordered so that the first I_r are exactly those trivial on o^x_r.
class UnitGroup {
 public:
  struct Generator {
    long element;
    long order;
  };

  explicit UnitGroup(RingSpec spec, int bits = kDefaultPrecisionBits);

  const RingSpec& spec() const { return spec_; }
  const std::vector<long>& elements() const { return elements_; }
  const std::vector<Generator>& generators() const { return generators_; }
  long exponent() const { return exponent_; }
  /// Exponents (m_i) with c = prod g_i^{m_i}.
  const std::vector<int>& coordinates(long c) const;
  const std::vector<UnitChar>& characters() const { return characters_; }

 private:
  RingSpec spec_;
  std::vector<long> elements_;
  std::vector<Generator> generators_;
  long exponent_ = 1;
  std::vector<std::vector<int>> coords_;  // indexed by ring value
  std::vector<UnitChar> characters_;
};

/// The I_r characters trivial on o^x_r; the first is the trivial character.
std::vector<UnitChar> unit_characters(const UnitGroup& group, Level r);
std::vector<UnitChar> unit_characters(const RingSpec& spec, Level r, int bits = kDefaultPrecisionBits);

enum class OrbitCriterion {
  kAction,       // same o^x_u orbit, by enumeration
  kRestriction,  // chi = chi' on R|_s
  kQuotient,     // chi chi'^{-1} in R^|^{s-1}
};

/// Whether chi and chi2 (of equal dual valuation r) share an o^x_u orbit,
/// u in {kMinusInfinity, 0..r}. Uses the quotient criterion.
bool char_orbit_equiv(const AddChar& chi, const AddChar& chi2, Level u);
bool char_orbit_equiv_by(OrbitCriterion criterion, const AddChar& chi, const AddChar& chi2, Level u);

}  // namespace kkit
