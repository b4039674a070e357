#pragma once

#include <span>
#include <vector>

#include "kkit/bigrational.hpp"
#include "kkit/multi_index.hpp"

namespace kkit {

/// Parameter set p = (p_r) of the ell-variate polynomial.
struct ParamVector {
  std::vector<BigRational> probs;

  static ParamVector uniform(int ell, const BigRational& p) {
    return ParamVector{std::vector<BigRational>(static_cast<size_t>(ell), p)};
  }
  int ell() const { return static_cast<int>(probs.size()); }
};

/// (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1.
BigRational pochhammer(const BigRational& a, int k);
BigRational factorial(int n);

/// N! / ((N-|n|)! prod n_r!), and 0 when a part is negative or |n| > N.
BigRational multinomial(int N, std::span<const int> parts);
inline BigRational multinomial(int N, const MultiIndex& n) { return multinomial(N, n.parts()); }

/// K_n(x; p; N) = sum_k (-n)_k (-x)_k / ((-N)_k k! p^k), for 0 <= n <= N.
BigRational kraw1(int n, const BigRational& x, const BigRational& p, int N);

/// (-N)_n K_n(x; p; N) with the (-N)_k denominators cleared:
///   sum_k (-n)_k (-x)_k (-N+k)_{n-k} / (k! p^k).
/// Defined for every n >= 0 and every integer N. p may be zero as long as
/// no nonvanishing term is divided by it.
BigRational scaled_kraw1(int n, const BigRational& x, const BigRational& p, int N);

/// ell-variate product-form Krawtchouk polynomial
///   K_n(x; p; N) = 1/(-N)_{|n|} prod_r (-N_r)_{n_r} K_{n_r}(x_r; p_r; N_r),
///   N_r = N - x|^{r-1} - n|_{r+1}.
/// Each factor is evaluated as scaled_kraw1, so n_r > N_r is allowed.
BigRational kraw_multi(const MultiIndex& n, const MultiIndex& x, const ParamVector& p, int N);

/// Size of the orbit O(x) in R^N for |R| = q^ell:
/// multinomial(N, x) prod_r (q^{ell-1-r} (q-1))^{x_r}.
BigRational orbit_size(const MultiIndex& x, int N, const BigRational& q);
/// dim V_n = multinomial(N, n) prod_r (q^r (q-1))^{n_r}.
BigRational spherical_dimension(const MultiIndex& n, int N, const BigRational& q);

struct OrthogonalityFailure {
  MultiIndex n;
  MultiIndex m;
  BigRational lhs;
  BigRational rhs;
};

struct OrthogonalityReport {
  int ell = 0;
  int N = 0;
  int q = 0;
  long pairs_checked = 0;
  std::vector<OrthogonalityFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks sum_x |O(x)| K_n(x) K_m(x) = delta_{nm} q^{ell N} / dim V_n over
/// X(ell, N)^2 with uniform parameter (q-1)/q.
OrthogonalityReport orthogonality_check(int ell, int N, int q);

}  // namespace kkit
