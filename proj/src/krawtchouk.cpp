#include "kkit/krawtchouk.hpp"

#include "kkit/errors.hpp"

namespace kkit {

BigRational pochhammer(const BigRational& a, int k) {
  if (k < 0) throw DomainError("pochhammer: negative k = " + std::to_string(k));
  BigRational r(1);
  for (int s = 0; s < k; ++s) {
    r *= a + BigRational(s);
    if (r.is_zero()) break;
  }
  return r;
}

BigRational factorial(int n) {
  if (n < 0) throw DomainError("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return BigRational(mpq_class(f));
}

BigRational multinomial(int N, std::span<const int> parts) {
  int total = 0;
  for (int v : parts) {
    if (v < 0) return BigRational(0);
    total += v;
  }
  if (N < 0 || total > N) return BigRational(0);
  BigRational den = factorial(N - total);
  for (int v : parts) den *= factorial(v);
  return factorial(N) / den;
}

BigRational kraw1(int n, const BigRational& x, const BigRational& p, int N) {
  if (n < 0) throw DomainError("kraw1: n must be >= 0");
  if (n > N) {
    throw DomainError("kraw1: n = " + std::to_string(n) + " exceeds N = " + std::to_string(N));
  }
  if (p.is_zero()) throw DomainError("kraw1: p must be nonzero");
  BigRational sum(0);
  BigRational term(1);  // (-n)_k (-x)_k / ((-N)_k k! p^k)
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      term *= BigRational(k - 1 - n) * (BigRational(k - 1) - x);
      term /= BigRational(k - 1 - N) * BigRational(k) * p;
    }
    sum += term;
  }
  return sum;
}

BigRational scaled_kraw1(int n, const BigRational& x, const BigRational& p, int N) {
  if (n < 0) throw DomainError("scaled_kraw1: n must be >= 0");
  BigRational sum(0);
  BigRational head(1);  // (-n)_k (-x)_k / k!
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      head *= BigRational(k - 1 - n) * (BigRational(k - 1) - x);
      head /= BigRational(k);
    }
    if (head.is_zero()) break;  // (-n)_k or (-x)_k vanished for good
    BigRational term = head * pochhammer(BigRational(k - N), n - k);
    if (term.is_zero()) continue;
    if (k > 0) {
      if (p.is_zero()) throw DomainError("scaled_kraw1: parameter p = 0 would be divided by");
      term /= p.pow(k);
    }
    sum += term;
  }
  return sum;
}

BigRational kraw_multi(const MultiIndex& n, const MultiIndex& x, const ParamVector& p, int N) {
  const int ell = n.ell();
  if (x.ell() != ell || p.ell() != ell) throw DomainError("kraw_multi: length mismatch among n, x, p");
  if (!n.in_X(N)) throw DomainError("kraw_multi: n = " + n.to_string() + " is not in X(ell, N)");
  if (!x.in_X(N)) throw DomainError("kraw_multi: x = " + x.to_string() + " is not in X(ell, N)");
  BigRational prod(1);
  for (int r = 0; r < ell; ++r) {
    const int Nr = N - x.prefix_sum(r - 1) - n.suffix_sum(r + 1);
    prod *= scaled_kraw1(n[r], BigRational(x[r]), p.probs[static_cast<size_t>(r)], Nr);
    if (prod.is_zero()) return prod;
  }
  return prod / pochhammer(BigRational(-N), n.total());
}

BigRational orbit_size(const MultiIndex& x, int N, const BigRational& q) {
  const int ell = x.ell();
  BigRational r = multinomial(N, x);
  for (int s = 0; s < ell; ++s) r *= (q.pow(ell - 1 - s) * (q - BigRational(1))).pow(x[s]);
  return r;
}

BigRational spherical_dimension(const MultiIndex& n, int N, const BigRational& q) {
  BigRational r = multinomial(N, n);
  for (int s = 0; s < n.ell(); ++s) r *= (q.pow(s) * (q - BigRational(1))).pow(n[s]);
  return r;
}

OrthogonalityReport orthogonality_check(int ell, int N, int q) {
  if (q < 2) throw DomainError("orthogonality_check: q must be >= 2");
  OrthogonalityReport rep;
  rep.ell = ell;
  rep.N = N;
  rep.q = q;
  const BigRational qq(q);
  const auto X = enumerate_X(ell, N);
  const auto params = ParamVector::uniform(ell, BigRational(q - 1, q));
  std::vector<std::vector<BigRational>> table;  // table[n][x]
  table.reserve(X.size());
  for (const auto& n : X) {
    std::vector<BigRational> row;
    row.reserve(X.size());
    for (const auto& x : X) row.push_back(kraw_multi(n, x, params, N));
    table.push_back(std::move(row));
  }
  std::vector<BigRational> weight;
  for (const auto& x : X) weight.push_back(orbit_size(x, N, qq));
  const BigRational volume = qq.pow(ell * N);
  for (size_t i = 0; i < X.size(); ++i) {
    for (size_t j = 0; j < X.size(); ++j) {
      BigRational lhs(0);
      for (size_t k = 0; k < X.size(); ++k) lhs += weight[k] * table[i][k] * table[j][k];
      const BigRational rhs = i == j ? volume / spherical_dimension(X[i], N, qq) : BigRational(0);
      ++rep.pairs_checked;
      if (lhs != rhs) rep.failures.push_back({X[i], X[j], lhs, rhs});
    }
  }
  return rep;
}

}  // namespace kkit
