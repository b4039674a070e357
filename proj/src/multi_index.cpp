#include "kkit/multi_index.hpp"

#include <numeric>
#include <sstream>

#include "kkit/errors.hpp"

namespace kkit {

int MultiIndex::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int MultiIndex::prefix_sum(int k) const {
  int s = 0;
  for (int r = 0; r <= k && r < ell(); ++r) s += parts_[static_cast<size_t>(r)];
  return s;
}

int MultiIndex::suffix_sum(int k) const {
  int s = 0;
  for (int r = std::max(k, 0); r < ell(); ++r) s += parts_[static_cast<size_t>(r)];
  return s;
}

bool MultiIndex::nonnegative() const {
  for (int v : parts_) {
    if (v < 0) return false;
  }
  return true;
}

MultiIndex MultiIndex::shifted0(int a) const {
  MultiIndex r(*this);
  if (!r.parts_.empty()) r.parts_[0] += a;
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.ell() != b.ell()) throw DomainError("MultiIndex: length mismatch");
  std::vector<int> out(a.parts());
  for (int r = 0; r < a.ell(); ++r) out[static_cast<size_t>(r)] += b[r];
  return MultiIndex(std::move(out));
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (a.ell() != b.ell()) throw DomainError("MultiIndex: length mismatch");
  std::vector<int> out(a.parts());
  for (int r = 0; r < a.ell(); ++r) out[static_cast<size_t>(r)] -= b[r];
  return MultiIndex(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& z) { return os << z.to_string(); }

MultiIndex parse_multi_index(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.front() == '(') s.erase(0, 1);
  if (!s.empty() && s.back() == ')') s.pop_back();
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("cannot parse multi-index '" + text + "'");
    }
  }
  if (parts.empty()) throw DomainError("empty multi-index '" + text + "'");
  return MultiIndex(std::move(parts));
}

namespace {
void enumerate_rec(int ell, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == ell) {
    out.emplace_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur.push_back(v);
    enumerate_rec(ell, remaining - v, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<MultiIndex> enumerate_X(int ell, int N) {
  if (ell < 1) throw DomainError("enumerate_X: ell must be >= 1");
  if (N < 0) throw DomainError("enumerate_X: N must be >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  enumerate_rec(ell, N, cur, out);
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace kkit
