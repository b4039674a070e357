#include "kkit/residue_ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "kkit/errors.hpp"

namespace kkit {

std::string level_to_string(Level r) {
  if (r == kInfinity) return "inf";
  if (r == kMinusInfinity) return "-inf";
  return std::to_string(r);
}

RingSpec::RingSpec(int p, int ell) : p_(p), ell_(ell) {
  if (!is_prime(p)) throw DomainError("ring: p = " + std::to_string(p) + " is not prime");
  if (ell < 1) throw DomainError("ring: ell must be >= 1");
  order_ = ipow(p, ell);
}

long RingSpec::uniformizer_power(int s) const {
  if (s < 0) throw DomainError("uniformizer power must be >= 0");
  if (s >= ell_) return 0;
  return ipow(p_, s);
}

long RingSpec::orbit_count(Level r) const {
  if (r == kMinusInfinity || r == -1) return 1;
  if (r < -1 || r >= ell_) throw DomainError("orbit count: level " + level_to_string(r) + " out of range");
  return ipow(p_, r) * (p_ - 1);
}

long RingSpec::reduce(long a) const {
  long m = a % order_;
  return m < 0 ? m + order_ : m;
}

Level valuation(const RingSpec& spec, long a) {
  a = spec.reduce(a);
  if (a == 0) return kInfinity;
  Level v = 0;
  while (a % spec.p() == 0) {
    a /= spec.p();
    ++v;
  }
  return v;
}

Level dual_valuation(const AddChar& chi) {
  Level best = kMinusInfinity;
  for (long a = 1; a < chi.spec.order(); ++a) {
    if (chi.exponent(a) == 0) continue;
    best = std::max(best, valuation(chi.spec, a));
  }
  return best;
}

Level dual_valuation_of_index(const RingSpec& spec, long b) {
  const Level v = valuation(spec, b);
  if (v == kInfinity) return kMinusInfinity;
  return spec.ell() - 1 - v;
}

std::vector<RingElem> orbit_Rr(const RingSpec& spec, Level r) {
  if (r != kInfinity && (r < 0 || r >= spec.ell()))
    throw DomainError("R_r: level " + level_to_string(r) + " out of range");
  std::vector<RingElem> out;
  for (long a = 0; a < spec.order(); ++a)
    if (valuation(spec, a) == r) out.emplace_back(spec, a);
  return out;
}

std::vector<AddChar> orbit_Rhat_r(const RingSpec& spec, Level r) {
  if (r != kMinusInfinity && (r < 0 || r >= spec.ell()))
    throw DomainError("dual orbit: level " + level_to_string(r) + " out of range");
  std::vector<AddChar> out;
  for (long b = 0; b < spec.order(); ++b)
    if (dual_valuation_of_index(spec, b) == r) out.emplace_back(spec, b);
  return out;
}

std::vector<AddChar> dual_prefix(const RingSpec& spec, Level s) {
  std::vector<AddChar> out;
  for (long b = 0; b < spec.order(); ++b) {
    const Level d = dual_valuation_of_index(spec, b);
    if (d == kMinusInfinity || (s != kMinusInfinity && d <= s)) out.emplace_back(spec, b);
  }
  return out;
}

AddChar lift_character(const RingSpec& spec, int s, long c) {
  if (s < 0 || s >= spec.ell()) throw DomainError("lift: s out of range");
  const long m = ipow(spec.p(), s + 1);
  c %= m;
  if (c < 0) c += m;
  return AddChar(spec, c * ipow(spec.p(), spec.ell() - s - 1));
}

bool is_unit(const RingSpec& spec, long a) { return spec.reduce(a) % spec.p() != 0; }

long unit_inverse(const RingSpec& spec, long a) {
  a = spec.reduce(a);
  if (!is_unit(spec, a)) throw DomainError("unit inverse of a non-unit");
  // Extended Euclid on (a, p^ell).
  long old_r = a, r = spec.order(), old_s = 1, s = 0;
  while (r != 0) {
    const long qt = old_r / r;
    std::tie(old_r, r) = std::pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::pair(s, old_s - qt * s);
  }
  return spec.reduce(old_s);
}

std::vector<RingElem> unit_subgroup(const RingSpec& spec, Level r) {
  std::vector<RingElem> out;
  if (r == kMinusInfinity) {
    for (long a = 1; a < spec.order(); ++a)
      if (is_unit(spec, a)) out.emplace_back(spec, a);
    return out;
  }
  if (r < 0) throw DomainError("unit subgroup: level " + level_to_string(r) + " out of range");
  if (r >= spec.ell() - 1) return {RingElem(spec, 1)};
  const long step = ipow(spec.p(), r + 1);
  for (long a = 0; a < spec.order() / step; ++a) out.emplace_back(spec, 1 + a * step);
  return out;
}

// ---------------------------------------------------------------------------
// Unit characters

namespace {

std::vector<ComplexHP> roots_table(long modulus, int bits) {
  std::vector<ComplexHP> roots;
  roots.reserve(static_cast<size_t>(modulus));
  for (long k = 0; k < modulus; ++k) roots.push_back(ComplexHP::unit_root(k, modulus, bits));
  return roots;
}

}  // namespace

UnitChar::UnitChar(RingSpec spec, Level level, long modulus, std::vector<long> phases,
                   const std::vector<ComplexHP>& roots)
    : spec_(spec), level_(level), modulus_(modulus), phases_(std::move(phases)) {
  if (static_cast<long>(roots.size()) != modulus_) throw std::logic_error("unit character: root table size");
  values_.assign(phases_.size(), ComplexHP(roots.front().precision()));
  for (size_t a = 0; a < phases_.size(); ++a)
    if (phases_[a] >= 0) values_[a] = roots[static_cast<size_t>(phases_[a])];
}

long UnitChar::phase(long c) const {
  const long a = spec_.reduce(c);
  if (phases_[static_cast<size_t>(a)] < 0) throw DomainError("unit character evaluated at a non-unit");
  return phases_[static_cast<size_t>(a)];
}

const ComplexHP& UnitChar::value(long c) const {
  phase(c);
  return values_[static_cast<size_t>(spec_.reduce(c))];
}

bool UnitChar::is_trivial() const {
  return std::all_of(phases_.begin(), phases_.end(), [](long ph) { return ph <= 0; });
}

UnitGroup::UnitGroup(RingSpec spec, int bits) : spec_(spec) {
  const long M = spec.order();
  for (long a = 1; a < M; ++a)
    if (is_unit(spec, a)) elements_.push_back(a);
  const long size = static_cast<long>(elements_.size());
  auto mul = [&](long a, long b) { return a * b % M; };
  auto order_of = [&](long g) {
    long k = 1;
    for (long x = g; x != 1; x = mul(x, g)) ++k;
    return k;
  };

  // Greedy cyclic decomposition: repeatedly take an element of maximal order
  // modulo the subgroup built so far, corrected to have that exact order.
  std::vector<char> in_sub(static_cast<size_t>(M), 0);
  std::vector<long> sub{1};
  in_sub[1] = 1;
  while (static_cast<long>(sub.size()) < size) {
    long best = -1, best_k = 0;
    for (long h : elements_) {
      long k = 1;
      for (long x = h; !in_sub[static_cast<size_t>(x)]; x = mul(x, h)) ++k;
      if (k > best_k) best = h, best_k = k;
    }
    std::vector<long> sorted_sub = sub;
    std::sort(sorted_sub.begin(), sorted_sub.end());
    long g = -1;
    for (long s : sorted_sub) {
      if (order_of(mul(best, s)) == best_k) {
        g = mul(best, s);
        break;
      }
    }
    if (g < 0) throw std::logic_error("unit group decomposition failed");
    generators_.push_back({g, best_k});
    std::vector<long> next;
    next.reserve(sub.size() * static_cast<size_t>(best_k));
    long gj = 1;
    for (long j = 0; j < best_k; ++j, gj = mul(gj, g))
      for (long x : sub) next.push_back(mul(x, gj));
    sub = std::move(next);
    for (long x : sub) in_sub[static_cast<size_t>(x)] = 1;
  }

  // Discrete logs with respect to the generators.
  const size_t ng = generators_.size();
  coords_.assign(static_cast<size_t>(M), {});
  std::vector<int> e(ng, 0);
  for (long count = 0; count < size; ++count) {
    long c = 1;
    for (size_t i = 0; i < ng; ++i)
      for (int j = 0; j < e[i]; ++j) c = mul(c, generators_[i].element);
    if (ng != 0 && !coords_[static_cast<size_t>(c)].empty())
      throw std::logic_error("unit group decomposition is not direct");
    coords_[static_cast<size_t>(c)] = e;
    for (size_t i = 0; i < ng; ++i) {
      if (++e[i] < generators_[i].order) break;
      e[i] = 0;
    }
  }

  exponent_ = 1;
  for (const auto& g : generators_) exponent_ = std::lcm(exponent_, g.order);

  // All characters, indexed by exponent tuples j: xi_j(c) = exp(2 pi i sum j_i m_i / o_i).
  std::vector<std::pair<Level, std::vector<long>>> tables;
  std::vector<long> j(ng, 0);
  for (long count = 0; count < size; ++count) {
    std::vector<long> phases(static_cast<size_t>(M), -1);
    for (long c : elements_) {
      long ph = 0;
      const auto& m = coords_[static_cast<size_t>(c)];
      for (size_t i = 0; i < ng; ++i) ph += j[i] * m[i] * (exponent_ / generators_[i].order);
      phases[static_cast<size_t>(c)] = ph % exponent_;
    }
    auto trivial_on = [&](Level u) {
      for (const auto& c : unit_subgroup(spec, u))
        if (phases[static_cast<size_t>(c.value)] != 0) return false;
      return true;
    };
    Level level = kMinusInfinity;
    if (!trivial_on(kMinusInfinity)) {
      level = 0;
      while (!trivial_on(level)) ++level;
    }
    tables.emplace_back(level, std::move(phases));
    for (size_t i = 0; i < ng; ++i) {
      if (++j[i] < generators_[i].order) break;
      j[i] = 0;
    }
  }
  std::stable_sort(tables.begin(), tables.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  characters_.reserve(tables.size());
  const auto roots = roots_table(exponent_, bits);
  for (auto& [level, phases] : tables) characters_.emplace_back(spec, level, exponent_, std::move(phases), roots);
}

const std::vector<int>& UnitGroup::coordinates(long c) const {
  const long a = spec_.reduce(c);
  if (!is_unit(spec_, a)) throw DomainError("coordinates of a non-unit");
  return coords_[static_cast<size_t>(a)];
}

std::vector<UnitChar> unit_characters(const UnitGroup& group, Level r) {
  const long count = group.spec().orbit_count(r);
  const auto& all = group.characters();
  return std::vector<UnitChar>(all.begin(), all.begin() + count);
}

std::vector<UnitChar> unit_characters(const RingSpec& spec, Level r, int bits) {
  return unit_characters(UnitGroup(spec, bits), r);
}

// ---------------------------------------------------------------------------
// Orbit equivalence

bool char_orbit_equiv_by(OrbitCriterion criterion, const AddChar& chi, const AddChar& chi2, Level u) {
  if (!(chi.spec == chi2.spec)) throw DomainError("orbit equivalence: characters of different rings");
  const RingSpec& spec = chi.spec;
  const Level r = dual_valuation_of_index(spec, chi.index);
  if (dual_valuation_of_index(spec, chi2.index) != r)
    throw DomainError("orbit equivalence: dual valuations differ");
  if (r == kMinusInfinity) return true;
  if (u != kMinusInfinity && (u < 0 || u > r))
    throw DomainError("orbit equivalence: u = " + level_to_string(u) + " outside {-inf, 0.." + std::to_string(r) + "}");
  const int s = (u == kMinusInfinity) ? r + 1 : r - u;

  switch (criterion) {
    case OrbitCriterion::kAction:
      for (const auto& c : unit_subgroup(spec, u))
        if (spec.reduce(chi.index * c.value) == chi2.index) return true;
      return false;
    case OrbitCriterion::kRestriction: {
      const long step = spec.uniformizer_power(s);
      if (step == 0) return true;
      for (long a = 0; a < spec.order(); a += step)
        if (chi.exponent(a) != chi2.exponent(a)) return false;
      return true;
    }
    case OrbitCriterion::kQuotient: {
      const Level d = dual_valuation_of_index(spec, chi.index - chi2.index);
      return d == kMinusInfinity || d <= s - 1;
    }
  }
  return false;
}

bool char_orbit_equiv(const AddChar& chi, const AddChar& chi2, Level u) {
  return char_orbit_equiv_by(OrbitCriterion::kQuotient, chi, chi2, u);
}

}  // namespace kkit
