#pragma once

#include <map>
#include <string>
#include <vector>

#include "kkit/bigrational.hpp"
#include "kkit/components.hpp"
#include "kkit/multi_index.hpp"
#include "kkit/spherical.hpp"

namespace kkit {

/// One instance of the addition formula: K_n(u + y - t e_0; (q-1)/q; N) on the left.
struct AdditionInstance {
  BigRational q;
  int N = 0;
  MultiIndex n;
  int t = 0;
  MultiIndex u;
  MultiIndex y;

  int ell() const { return n.ell(); }
  /// Throws DomainError naming the violated hypothesis.
  void validate() const;
  /// u + y - t e_0
  MultiIndex lhs_argument() const;
  std::string to_string() const;
};

/// base + shift * e_0. Entry 0 may go negative; multinomials involving it then vanish.
struct ShiftedIndex {
  MultiIndex base;
  int shift = 0;

  MultiIndex value() const { return base.shifted0(shift); }
  bool nonnegative() const { return value().nonnegative(); }
};

/// Bookkeeping of the nonzero terms of the double sum.
struct SupportAudit {
  long terms = 0;       // (alpha, z) pairs visited
  long nonzero = 0;
  long violations = 0;  // nonzero terms with alpha !<= n or |n - alpha| + z > t
};

BigRational theorem_lhs(const AdditionInstance& inst);
/// The double sum over alpha in X(ell, N) and z, exactly. The power
/// (q(q-2)/(q-1)^2)^{n_0 - alpha_0} is folded into the r = 0 factor of the
/// y-side polynomial, which keeps q = 2 well defined when y_0 > 0.
BigRational theorem_rhs(const AdditionInstance& inst, SupportAudit* audit = nullptr);

/// Both sides with the pieces that do not depend on y (or on n) memoized.
/// One evaluator per (q, ell, N); not thread safe.
class AdditionEvaluator {
 public:
  AdditionEvaluator(BigRational q, int ell, int N);

  BigRational lhs(const MultiIndex& n, int t, const MultiIndex& u, const MultiIndex& y);
  BigRational rhs(const MultiIndex& n, int t, const MultiIndex& u, const MultiIndex& y,
                  SupportAudit* audit = nullptr);

 private:
  /// multinomial(N-t, alpha - z e_0) K_{alpha - z e_0}(u - t e_0; (q-1)/q; N-t) / (q-1)^{2z}
  const BigRational& left_factor(const MultiIndex& alpha, int z, int t, const MultiIndex& u);
  /// K_m(y; ((q-2)/(q-1), (q-1)/q, ...); t) times (q(q-2)/(q-1)^2)^{m_0}, folded
  const BigRational& right_factor(const MultiIndex& m, const MultiIndex& y, int t);

  BigRational q_;
  int ell_;
  int N_;
  BigRational p_;  // (q-1)/q
  std::vector<MultiIndex> alphas_;
  std::map<std::vector<int>, BigRational> left_;
  std::map<std::vector<int>, BigRational> right_;
};

struct AdditionSweep {
  std::vector<BigRational> qs;
  std::vector<int> ells;
  int N_min = 1;
  int N_max = 1;
  int jobs = 1;
  bool timing = false;
};

struct AdditionFailure {
  AdditionInstance inst;
  BigRational lhs;
  BigRational rhs;
};

/// Totals for one (q, ell, N).
struct AdditionGroup {
  BigRational q;
  int ell = 0;
  int N = 0;
  long predicted = 0;
  long instances = 0;
  long passed = 0;
  long support_violations = 0;
  double micros = 0;
};

struct AdditionReport {
  std::vector<AdditionGroup> groups;
  std::vector<AdditionFailure> failures;
  long predicted = 0;
  long instances = 0;
  long passed = 0;
  long support_violations = 0;
  double micros = 0;
  bool ok() const { return failures.empty() && support_violations == 0 && predicted == instances; }
};

/// sum_N |X(ell, N)| sum_t |X(ell, N-t)| |X(ell, t)|: the number of admissible (n, t, u, y).
long predicted_instance_count(int ell, int N);

/// Exhaustive lhs == rhs over every admissible instance; throws DomainError for
/// q = 0 or 1 and ConfigError for empty ranges. The report does not depend on jobs.
AdditionReport theorem_verify(const AdditionSweep& sweep);

/// Units c with c_k - 1 of valuation r for y_r of the first t coordinates and
/// c_k = 1 elsewhere, so that c 1^t - pi^u lies in O(u + y - t e_0).
/// Empty when y_0 > 0 and p = 2 (no unit is != 1 mod 2).
std::vector<long> realizing_units(const RingSpec& spec, int N, int t, const MultiIndex& y);

struct HarmonicMismatch {
  AdditionInstance inst;
  Point point;
  BigRational lhs;
  BigRational oracle;
};

struct HarmonicReport {
  int p = 0;
  int ell = 0;
  int N = 0;
  long checked = 0;
  long skipped = 0;
  std::vector<HarmonicMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// theorem_lhs against the zonal oracle at c 1^t - pi^u, for every admissible instance with q = p.
HarmonicReport harmonic_consistency_check(int p, int ell, int N);

struct InnerProductRecord {
  Composition alpha;
  bool excluded = false;  // alpha_r^(i) != 0 for some r >= 1, 2 <= i <= I_{r-1}
  std::string direct;
  std::string formula;
  double direct_abs = 0;
  double discrepancy = 0;  // |direct - formula|, or |direct| when excluded
  bool ok = true;
};

struct InnerProductReport {
  MultiIndex n;
  int t = 0;
  MultiIndex u;
  std::vector<long> c;
  double tolerance = 0;
  double max_discrepancy = 0;
  /// |dim V_n sum_alpha direct - omega_n(c 1^t - pi^u)|
  double sum_residual = 0;
  std::vector<InnerProductRecord> records;
  bool ok() const;
};

/// <c . V_{n,alpha}(omega_n(1^t + .)), V_{n,alpha}(omega_n(pi^u + .))> computed
/// directly and from the gamma coefficients, for every alpha in A(n).
InnerProductReport inner_product_formula_check(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n,
                                               int t, const MultiIndex& u, const std::vector<long>& c,
                                               double tolerance);

}  // namespace kkit
