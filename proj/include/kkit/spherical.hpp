#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kkit/fn_table.hpp"
#include "kkit/multi_index.hpp"
#include "kkit/residue_ring.hpp"

namespace kkit {

/// x with x_r = #{k : v(a_k) = r}.
MultiIndex orbit_index(const RingSpec& spec, const Point& a);
/// n with n_r = #{k : v^(chi_{b_k}) = r} for the character tuple chi_b.
MultiIndex char_orbit_index(const RingSpec& spec, const Point& b);
/// pi^u = (1,..,1, pi,..,pi, ..., pi^{ell-1},.., 0,..,0), u_s copies of pi^s.
Point canonical_point(const RingSpec& spec, int N, const MultiIndex& u);
/// 1^t = (1,..,1, 0,..,0).
Point ones_point(int N, int t);
/// dim V_n by counting character tuples.
long character_orbit_count(const RingSpec& spec, int N, const MultiIndex& n);

/// Zonal spherical functions on R^N by brute force over all character tuples:
///   omega_n(a) = |P(n)|^{-1} sum_{chi in P(n)} chi(a).
class ZonalOracle {
 public:
  ZonalOracle(RingSpec spec, int N);

  const RingSpec& spec() const { return spec_; }
  int N() const { return N_; }
  /// X(ell, N) in enumeration order; rows of values() follow it.
  const std::vector<MultiIndex>& labels() const { return labels_; }
  /// |P(n)|
  long orbit_size(const MultiIndex& n) const;

  /// sum_{chi in P(n)} chi(a), exactly.
  CycloNumber character_sum(const MultiIndex& n, const Point& a) const;
  /// omega_n(a) for every n at once; NotRational if a sum leaves Q.
  std::vector<BigRational> values(const Point& a) const;
  BigRational value(const MultiIndex& n, const Point& a) const;
  /// omega_n on O(x), evaluated at pi^x.
  BigRational value(const MultiIndex& n, const MultiIndex& x) const;
  /// omega_n as a table, one oracle evaluation per orbit.
  ExactTable table(const MultiIndex& n) const;

 private:
  std::size_t label_id(const MultiIndex& n) const;
  std::vector<std::vector<long>> exponent_counts(const Point& a) const;

  RingSpec spec_;
  int N_;
  std::vector<MultiIndex> labels_;
  std::vector<int> tuple_label_;  // label id of each character tuple, by point index
  std::vector<long> orbit_sizes_;
};

BigRational zonal_oracle(const RingSpec& spec, int N, const MultiIndex& n, const MultiIndex& x);

/// Label of a one-variable basis function: the constant 1 is (kMinusInfinity, 1);
/// phi_r^(i) is (r, i) with 1 <= i <= I_r.
struct BasisLabel {
  Level r;
  int i;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Per-ring data for the harmonic analysis: unit characters, the
/// relatively invariant basis phi_r^(i) and the translation coefficients.
/// Built in the constructor and read-only afterwards.
class Lab {
 public:
  explicit Lab(RingSpec spec, int bits = kDefaultPrecisionBits);

  const RingSpec& spec() const { return spec_; }
  int bits() const { return bits_; }
  const UnitGroup& units() const { return units_; }
  const UnitChar& xi(int i) const { return units_.characters()[static_cast<std::size_t>(i - 1)]; }

  /// 1 + sum_r I_r = p^ell functions: id 0 is the constant, then (r, i) by r, then i.
  int basis_size() const { return static_cast<int>(basis_.size()); }
  int basis_id(Level r, int i) const;
  BasisLabel basis_label(int id) const { return labels_[static_cast<std::size_t>(id)]; }
  const HPTable& basis(int id) const { return basis_[static_cast<std::size_t>(id)]; }
  const HPTable& phi(int r, int i) const { return basis(basis_id(r, i)); }

  /// gamma_{r,s}^(i) = I_r^{-1/2} conj(xi^(i)(-1)) conj(phi_r^(i)(pi^s)), 0 <= s <= r.
  const ComplexHP& gamma(int r, int s, int i) const;

 private:
  RingSpec spec_;
  int bits_;
  UnitGroup units_;
  std::vector<BasisLabel> labels_;
  std::vector<HPTable> basis_;
  std::vector<int> level_offset_;
  std::vector<std::vector<std::vector<ComplexHP>>> gamma_;  // [r][s][i-1]
};

/// The I_r functions phi_r^(1..I_r) (tables over R).
std::vector<HPTable> phi_basis(const Lab& lab, int r);
/// sum_{chi in R^_r} chi = sqrt(I_r) phi_r^(1), exactly.
ExactTable phi1_unnormalized(const RingSpec& spec, int r);

/// Index window (lo, hi] of the i with gamma_{r,s}^(i) possibly nonzero:
/// (I_{r-s-1}, I_{r-s}] with I_{-1} = 1 (so s = r gives 2 <= i <= q-1).
std::pair<long, long> gamma_window(const RingSpec& spec, int r, int s);

struct EpsilonReport {
  int r = 0;
  int i = 0;
  Level u = kMinusInfinity;
  double norm_deviation = 0;   // |sum |eps|^2 - 1|
  bool constancy_applies = false;
  double constancy_deviation = 0;  // max spread of eps within an orbit
  double orbit_sum_max = 0;        // max |orbit sum of eps|, when it applies
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Expands phi_r^(i) = sum eps_chi chi and checks the norm, the constancy
/// on o^x_u-orbits (i <= I_u) and the vanishing orbit sums (i > I_u).
EpsilonReport epsilon_properties_check(const Lab& lab, int r, int i, Level u, double tolerance);

struct GammaCheck {
  std::string what;
  int r = 0;
  int s = 0;
  int i = 0;
  double deviation = 0;
  bool ok = true;
};

struct GammaReport {
  double reconstruction_residual = 0;  // max over (r, s <= r) of the expansion residual
  std::vector<GammaCheck> checks;
  bool ok() const;
};

/// Checks the values, moduli, support windows and the expansion
///   phi_r^(1)(pi^s + .) = sum_i gamma_{r,s}^(i) phi_r^(i)
/// of the translation coefficients, plus invariance of phi_r^(1) under
/// translation by R_s for s > r.
GammaReport gamma_table_check(const Lab& lab, double tolerance);

}  // namespace kkit
