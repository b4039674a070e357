#pragma once

#include <string>
#include <vector>

#include "kkit/fn_table.hpp"
#include "kkit/multi_index.hpp"
#include "kkit/spherical.hpp"

namespace kkit {

/// alpha = (alpha_r^(i)): for each level r a composition of n_r into I_r parts.
struct Composition {
  std::vector<std::vector<int>> parts;  // parts[r][i-1]

  int at(int r, int i) const { return parts[static_cast<std::size_t>(r)][static_cast<std::size_t>(i - 1)]; }
  /// alpha^(1) = (alpha_r^(1))_r
  MultiIndex first() const;
  std::string to_string() const;
  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;
};

/// A(n), every level enumerated lexicographically.
std::vector<Composition> enumerate_compositions(const RingSpec& spec, const MultiIndex& n);
/// The multiset of basis ids carried by alpha, padded with the constant (id 0) to length N, sorted.
std::vector<int> composition_word(const Lab& lab, const Composition& alpha, int N);
/// Distinct arrangements of a word, in lexicographic order.
std::vector<std::vector<int>> distinct_permutations(std::vector<int> word);

struct VnaBlock {
  Composition alpha;
  BigRational dim_formula;  // multinomial(N, n) prod_r multinomial(n_r, alpha_r)
  long basis_count = 0;     // |B(alpha)| by enumeration
};

struct VnaDecomposition {
  MultiIndex n;
  std::vector<VnaBlock> blocks;
  BigRational dim_sum;        // sum of dim_formula
  BigRational dim_formula;    // multinomial(N, n) prod I_r^{n_r}
  long dim_count = 0;         // |P(n)| by counting character tuples
  bool ok() const;
};

VnaDecomposition vna_decomposition(const Lab& lab, int N, const MultiIndex& n);
/// Basis B(alpha): tensor words of ids, one per element.
std::vector<std::vector<int>> vna_basis_words(const Lab& lab, int N, const Composition& alpha);
/// The pure tensor phi_{w_1} (x) ... (x) phi_{w_N}.
HPTable materialize(const Lab& lab, const std::vector<int>& word);

/// [f_1 (x) ... (x) f_m (x) 1 ...]_{S_N}: the sum over S_N modulo the
/// stabilizer of the tensor, i.e. over distinct arrangements of the factors.
ExactTable symmetrize(const std::vector<ExactTable>& factors, int N);
HPTable symmetrize(const std::vector<HPTable>& factors, int N, double tolerance);

/// A run of coordinates [start, start + length) carrying [(x) basis(ids) (x) 1...]_{S_length}.
struct SymBlock {
  int start = 0;
  int length = 0;
  std::vector<int> ids;
};
/// prod over blocks of the block symmetrizations (blocks must tile 0..N-1).
HPTable block_symmetrize(const Lab& lab, int N, const std::vector<SymBlock>& blocks);

/// Coefficients of f in the orthonormal tensor basis {(x)_k basis(j_k)}.
class BasisCoefficients {
 public:
  BasisCoefficients(const Lab& lab, const HPTable& f);
  /// sum of |c|^2 over tensor words whose level count is not n
  double mass_outside(const MultiIndex& n) const;
  /// The component on Span B(alpha).
  HPTable project(const Composition& alpha) const;

 private:
  const Lab* lab_;
  int N_;
  std::vector<ComplexHP> coeffs_;
};

/// Orthogonal projection of f in V_n onto Span B(alpha); throws DomainError
/// when f has mass outside V_n above the tolerance.
HPTable component_projection(const Lab& lab, const HPTable& f, const MultiIndex& n, const Composition& alpha,
                             double tolerance);

/// The closed form of V_{n,alpha}(omega_n(pi^u + .)) as a sum over W(alpha, u).
HPTable component_closed_form(const Lab& lab, int N, const MultiIndex& n, const MultiIndex& u,
                              const Composition& alpha, long* w_count = nullptr);
/// Translation by 1^t can only reach alpha with alpha_r^(i) = 0 for r >= 1, 2 <= i <= I_{r-1}.
bool admissible_for_ones(const RingSpec& spec, const Composition& alpha);
/// The t-restricted form of V_{n,alpha}(omega_n(1^t + .)), summed over z.
HPTable component_corollary_form(const Lab& lab, int N, const MultiIndex& n, int t, const Composition& alpha);

struct ComponentRecord {
  Composition alpha;
  long w_count = 0;
  double direct_norm = 0;     // max |V_{n,alpha}(...)|
  double discrepancy = 0;     // direct vs closed form
  bool corollary_checked = false;
  double corollary_discrepancy = 0;
  bool forced_zero = false;   // alpha violates the 1^t support condition
  bool ok = true;
};

struct ComponentReport {
  MultiIndex n;
  MultiIndex u;
  double completeness_residual = 0;  // |sum_alpha components - f|
  double max_discrepancy = 0;
  std::vector<ComponentRecord> records;
  bool ok() const;
};

/// Compares the direct projection of omega_n(pi^u + .) with the closed form for
/// every alpha in A(n); when u = t e_0 also the t-restricted form.
ComponentReport verify_component_formula(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n,
                                         const MultiIndex& u, double tolerance);

/// omega_n as a ComplexHP table (values from the exact oracle).
HPTable omega_table(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n);

struct TranslationRecord {
  BigRational lhs;        // omega_n(g(a) - b)
  std::string rhs;        // dim V_n <g.omega_n(a+.), omega_n(b+.)>
  double discrepancy = 0;
  bool ok = true;
};

/// omega_n(g(a) - b) = dim V_n <g . omega_n(a + .), omega_n(b + .)>, with the
/// right side in ComplexHP.
TranslationRecord verify_translation_identity(const Lab& lab, const ZonalOracle& oracle, const MultiIndex& n,
                                              const Point& a, const Point& b, const GroupElement& g,
                                              double tolerance);
/// Same identity with every table exact; equality is exact.
TranslationRecord verify_translation_identity_exact(const ZonalOracle& oracle, const MultiIndex& n,
                                                    const Point& a, const Point& b, const GroupElement& g);

}  // namespace kkit
