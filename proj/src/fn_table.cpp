#include "kkit/fn_table.hpp"

#include <algorithm>
#include <cstdlib>

namespace kkit {

long max_table_size() {
  if (const char* env = std::getenv("KKIT_MAX_TABLE")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0)
      throw ConfigError(std::string("KKIT_MAX_TABLE must be a positive integer, got '") + env + "'");
    return v;
  }
  return kDefaultMaxTable;
}

long checked_table_size(const RingSpec& spec, int N) {
  if (N < 1) throw DomainError("function table: N must be >= 1");
  const long cap = max_table_size();
  long size = 1;
  for (int k = 0; k < N; ++k) {
    if (size > cap / spec.order())
      throw SizeGuardError("table of size " + std::to_string(spec.order()) + "^" + std::to_string(N) +
                           " exceeds the limit " + std::to_string(cap) + " (set KKIT_MAX_TABLE to raise it)");
    size *= spec.order();
  }
  return size;
}

std::size_t point_index(const RingSpec& spec, const Point& a) {
  std::size_t idx = 0;
  for (long v : a) idx = idx * static_cast<std::size_t>(spec.order()) + static_cast<std::size_t>(spec.reduce(v));
  return idx;
}

Point point_at(const RingSpec& spec, int N, std::size_t index) {
  Point a(static_cast<std::size_t>(N));
  const auto M = static_cast<std::size_t>(spec.order());
  for (int k = N - 1; k >= 0; --k) {
    a[static_cast<std::size_t>(k)] = static_cast<long>(index % M);
    index /= M;
  }
  return a;
}

std::string point_to_string(const Point& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(a[k]);
  }
  return s + ")";
}

GroupElement GroupElement::identity(int N) {
  GroupElement g;
  g.units.assign(static_cast<std::size_t>(N), 1);
  g.perm.resize(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) g.perm[static_cast<std::size_t>(k)] = k;
  return g;
}

Point GroupElement::apply(const RingSpec& spec, const Point& a) const {
  Point out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto k = static_cast<std::size_t>(perm[j]);  // a_j lands in slot sigma(j)
    out[k] = spec.reduce(units[k] * a[j]);
  }
  return out;
}

Point GroupElement::apply_inverse(const RingSpec& spec, const Point& a) const {
  Point out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto k = static_cast<std::size_t>(perm[j]);
    out[j] = spec.reduce(unit_inverse(spec, units[k]) * a[k]);
  }
  return out;
}

double max_distance(const HPTable& f, const HPTable& g) {
  f.check_shape(g);
  double worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, distance(f[i], g[i]));
  return worst;
}

HPTable to_hp(const ExactTable& f, int bits) {
  HPTable out(f.spec(), f.N(), ComplexHP(bits));
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].to_complex(bits);
  return out;
}

}  // namespace kkit
