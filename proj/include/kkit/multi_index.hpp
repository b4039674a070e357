#pragma once

#include <compare>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace kkit {

/// An ell-tuple of integers (x_0, ..., x_{ell-1}). Members of X(ell, N) have
/// nonnegative parts summing to at most N; intermediate values such as
/// x - a*e_0 may leave that set, so the type itself does not enforce it.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {}
  MultiIndex(std::initializer_list<int> parts) : parts_(parts) {}
  static MultiIndex zeros(int ell) { return MultiIndex(std::vector<int>(static_cast<size_t>(ell), 0)); }

  int ell() const { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const { return parts_; }
  int operator[](int r) const { return parts_[static_cast<size_t>(r)]; }
  int& operator[](int r) { return parts_[static_cast<size_t>(r)]; }

  /// |z|
  int total() const;
  /// z|^k = sum_{s <= k} z_s (0 for k < 0).
  int prefix_sum(int k) const;
  /// z|_k = sum_{s >= k} z_s (0 for k >= ell).
  int suffix_sum(int k) const;

  bool nonnegative() const;
  /// Membership in X(ell, N).
  bool in_X(int N) const { return nonnegative() && total() <= N; }

  /// x + a*e_0
  MultiIndex shifted0(int a) const;

  /// "(1,2,3)"
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> parts_;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
std::ostream& operator<<(std::ostream& os, const MultiIndex& z);

/// Parses "1,2,3" (also accepts surrounding parentheses).
MultiIndex parse_multi_index(const std::string& text);

/// All members of X(ell, N) in lexicographic order; C(N+ell, ell) of them.
std::vector<MultiIndex> enumerate_X(int ell, int N);

/// Binomial coefficient as a machine integer (0 outside 0 <= k <= n).
long long binomial(long long n, long long k);

}  // namespace kkit
