#include "kkit/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "kkit/krawtchouk.hpp"

namespace kkit {

MultiIndex orbit_index(const RingSpec& spec, const Point& a) {
  MultiIndex x = MultiIndex::zeros(spec.ell());
  for (long v : a) {
    const Level r = valuation(spec, v);
    if (r != kInfinity) ++x[r];
  }
  return x;
}

MultiIndex char_orbit_index(const RingSpec& spec, const Point& b) {
  MultiIndex n = MultiIndex::zeros(spec.ell());
  for (long v : b) {
    const Level r = dual_valuation_of_index(spec, v);
    if (r != kMinusInfinity) ++n[r];
  }
  return n;
}

Point canonical_point(const RingSpec& spec, int N, const MultiIndex& u) {
  if (u.ell() != spec.ell() || !u.in_X(N)) throw DomainError("pi^u: u = " + u.to_string() + " is not in X(ell, N)");
  Point a;
  for (int s = 0; s < spec.ell(); ++s) a.insert(a.end(), static_cast<std::size_t>(u[s]), spec.uniformizer_power(s));
  a.resize(static_cast<std::size_t>(N), 0);
  return a;
}

Point ones_point(int N, int t) {
  if (t < 0 || t > N) throw DomainError("1^t: t must lie in [0, N]");
  Point a(static_cast<std::size_t>(N), 0);
  std::fill(a.begin(), a.begin() + t, 1);
  return a;
}

long character_orbit_count(const RingSpec& spec, int N, const MultiIndex& n) {
  const long total = checked_table_size(spec, N);
  long count = 0;
  for (long i = 0; i < total; ++i)
    if (char_orbit_index(spec, point_at(spec, N, static_cast<std::size_t>(i))) == n) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Zonal oracle

ZonalOracle::ZonalOracle(RingSpec spec, int N) : spec_(spec), N_(N), labels_(enumerate_X(spec.ell(), N)) {
  const long total = checked_table_size(spec, N);
  tuple_label_.resize(static_cast<std::size_t>(total));
  orbit_sizes_.assign(labels_.size(), 0);
  for (long i = 0; i < total; ++i) {
    const auto id = label_id(char_orbit_index(spec, point_at(spec, N, static_cast<std::size_t>(i))));
    tuple_label_[static_cast<std::size_t>(i)] = static_cast<int>(id);
    ++orbit_sizes_[id];
  }
}

std::size_t ZonalOracle::label_id(const MultiIndex& n) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), n);
  if (it == labels_.end() || !(*it == n)) throw DomainError("n = " + n.to_string() + " is not in X(ell, N)");
  return static_cast<std::size_t>(it - labels_.begin());
}

long ZonalOracle::orbit_size(const MultiIndex& n) const { return orbit_sizes_[label_id(n)]; }

std::vector<std::vector<long>> ZonalOracle::exponent_counts(const Point& a) const {
  if (static_cast<int>(a.size()) != N_) throw DomainError("zonal oracle: point has the wrong length");
  const long M = spec_.order();
  std::vector<std::vector<long>> counts(labels_.size(), std::vector<long>(static_cast<std::size_t>(M), 0));
  // Walk the character tuples b in index order, updating sum_k b_k a_k incrementally.
  Point b(static_cast<std::size_t>(N_), 0);
  long e = 0;
  for (std::size_t i = 0; i < tuple_label_.size(); ++i) {
    ++counts[static_cast<std::size_t>(tuple_label_[i])][static_cast<std::size_t>(e)];
    for (int k = N_ - 1; k >= 0; --k) {
      const auto kk = static_cast<std::size_t>(k);
      if (++b[kk] < M) {
        e = spec_.reduce(e + a[kk]);
        break;
      }
      b[kk] = 0;
      e = spec_.reduce(e - (M - 1) * a[kk]);
    }
  }
  return counts;
}

CycloNumber ZonalOracle::character_sum(const MultiIndex& n, const Point& a) const {
  const auto counts = exponent_counts(a);
  return CycloNumber::from_exponent_counts(spec_.p(), spec_.ell(), counts[label_id(n)]);
}

std::vector<BigRational> ZonalOracle::values(const Point& a) const {
  const auto counts = exponent_counts(a);
  std::vector<BigRational> out;
  out.reserve(labels_.size());
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    const auto sum = CycloNumber::from_exponent_counts(spec_.p(), spec_.ell(), counts[j]);
    out.push_back(cyclo_to_rational(sum) / BigRational(orbit_sizes_[j]));
  }
  return out;
}

BigRational ZonalOracle::value(const MultiIndex& n, const Point& a) const {
  const auto sum = character_sum(n, a);
  return cyclo_to_rational(sum) / BigRational(orbit_size(n));
}

BigRational ZonalOracle::value(const MultiIndex& n, const MultiIndex& x) const {
  return value(n, canonical_point(spec_, N_, x));
}

ExactTable ZonalOracle::table(const MultiIndex& n) const {
  std::map<MultiIndex, CycloNumber> per_orbit;
  ExactTable out(spec_, N_, CycloNumber(spec_.p(), spec_.ell()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const MultiIndex x = orbit_index(spec_, point_at(spec_, N_, i));
    auto it = per_orbit.find(x);
    if (it == per_orbit.end())
      it = per_orbit.emplace(x, CycloNumber::from_rational(spec_.p(), spec_.ell(), value(n, x))).first;
    out[i] = it->second;
  }
  return out;
}

BigRational zonal_oracle(const RingSpec& spec, int N, const MultiIndex& n, const MultiIndex& x) {
  return ZonalOracle(spec, N).value(n, x);
}

// ---------------------------------------------------------------------------
// The phi basis and translation coefficients

std::pair<long, long> gamma_window(const RingSpec& spec, int r, int s) {
  if (s < 0 || s > r || r >= spec.ell()) throw DomainError("gamma window: need 0 <= s <= r < ell");
  return {spec.orbit_count(r - s - 1), spec.orbit_count(r - s)};
}

Lab::Lab(RingSpec spec, int bits) : spec_(spec), bits_(bits), units_(spec, bits) {
  const long M = spec.order();
  const long E = units_.exponent();
  const long L = std::lcm(M, E);
  std::vector<ComplexHP> roots;
  roots.reserve(static_cast<std::size_t>(L));
  for (long k = 0; k < L; ++k) roots.push_back(ComplexHP::unit_root(k, L, bits));
  std::vector<long> inverses;
  for (long c : units_.elements()) inverses.push_back(unit_inverse(spec, c));

  labels_.push_back({kMinusInfinity, 1});
  basis_.emplace_back(spec, 1, ComplexHP(BigRational(1), bits));
  for (int r = 0; r < spec.ell(); ++r) {
    level_offset_.push_back(static_cast<int>(basis_.size()));
    const long b0 = spec.uniformizer_power(spec.ell() - 1 - r);
    for (int i = 1; i <= spec.orbit_count(r); ++i) {
      // phi(a) ~ sum_c conj(xi(c)) chi_{b0}(c^{-1} a), accumulated as exp(2 pi i k / L).
      const UnitChar& x = xi(i);
      HPTable f(spec, 1, ComplexHP(bits));
      for (long a = 0; a < M; ++a) {
        std::vector<long> counts(static_cast<std::size_t>(L), 0);
        for (std::size_t j = 0; j < inverses.size(); ++j) {
          const long e = spec.reduce(b0 * inverses[j] % M * a);
          const long ph = x.phase(units_.elements()[j]);
          long k = (e * (L / M) - ph * (L / E)) % L;
          if (k < 0) k += L;
          ++counts[static_cast<std::size_t>(k)];
        }
        ComplexHP v(bits);
        for (long k = 0; k < L; ++k) {
          const long c = counts[static_cast<std::size_t>(k)];
          if (c != 0) v += roots[static_cast<std::size_t>(k)] * HpReal(c, bits);
        }
        f[static_cast<std::size_t>(a)] = v;
      }
      const HpReal norm2 = inner_product(f, f, bits).re();
      if (norm2.to_double() < 1e-20)
        throw std::logic_error("phi_" + std::to_string(r) + "^(" + std::to_string(i) + "): isotypic projection vanished");
      f.scale(HpReal(1, bits) / sqrt(norm2));
      labels_.push_back({r, i});
      basis_.push_back(std::move(f));
    }
  }

  gamma_.resize(static_cast<std::size_t>(spec.ell()));
  for (int r = 0; r < spec.ell(); ++r) {
    const HpReal inv_sqrt = HpReal(1, bits) / sqrt(HpReal(spec.orbit_count(r), bits));
    gamma_[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(r + 1));
    for (int s = 0; s <= r; ++s) {
      auto& row = gamma_[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      const auto pis = static_cast<std::size_t>(spec.uniformizer_power(s));
      for (int i = 1; i <= spec.orbit_count(r); ++i)
        row.push_back(conj(xi(i).value(M - 1)) * conj(phi(r, i)[pis]) * inv_sqrt);
    }
  }
}

int Lab::basis_id(Level r, int i) const {
  if (r == kMinusInfinity) {
    if (i != 1) throw DomainError("basis: the constant function has only index 1");
    return 0;
  }
  if (r < 0 || r >= spec_.ell() || i < 1 || i > spec_.orbit_count(r))
    throw DomainError("basis: no phi_" + level_to_string(r) + "^(" + std::to_string(i) + ")");
  return level_offset_[static_cast<std::size_t>(r)] + i - 1;
}

const ComplexHP& Lab::gamma(int r, int s, int i) const {
  if (r < 0 || r >= spec_.ell() || s < 0 || s > r || i < 1 || i > spec_.orbit_count(r))
    throw DomainError("gamma: index out of range");
  return gamma_[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)][static_cast<std::size_t>(i - 1)];
}

std::vector<HPTable> phi_basis(const Lab& lab, int r) {
  std::vector<HPTable> out;
  for (int i = 1; i <= lab.spec().orbit_count(r); ++i) out.push_back(lab.phi(r, i));
  return out;
}

ExactTable phi1_unnormalized(const RingSpec& spec, int r) {
  ExactTable f(spec, 1, CycloNumber(spec.p(), spec.ell()));
  std::vector<long> counts(static_cast<std::size_t>(spec.order()));
  const auto chars = orbit_Rhat_r(spec, r);
  for (long a = 0; a < spec.order(); ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const auto& chi : chars) ++counts[static_cast<std::size_t>(chi.exponent(a))];
    f[static_cast<std::size_t>(a)] = CycloNumber::from_exponent_counts(spec.p(), spec.ell(), counts);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Coefficient lemma

EpsilonReport epsilon_properties_check(const Lab& lab, int r, int i, Level u, double tolerance) {
  const RingSpec& spec = lab.spec();
  if (r < 0 || r >= spec.ell()) throw DomainError("epsilon check: r out of range");
  if (i < 2 || i > spec.orbit_count(r)) throw DomainError("epsilon check: need 2 <= i <= I_r");
  if (u != kMinusInfinity && (u < 0 || u > r)) throw DomainError("epsilon check: need u = -inf or 0 <= u <= r");
  EpsilonReport rep;
  rep.r = r;
  rep.i = i;
  rep.u = u;
  const int bits = lab.bits();
  const HPTable& f = lab.phi(r, i);

  // eps_chi = <phi, chi>, characters being orthonormal.
  std::map<long, ComplexHP> eps;
  HpReal norm(bits);
  for (const auto& chi : orbit_Rhat_r(spec, r)) {
    ComplexHP acc(bits);
    for (long a = 0; a < spec.order(); ++a)
      acc += f[static_cast<std::size_t>(a)] * ComplexHP::unit_root(-chi.exponent(a), spec.order(), bits);
    acc /= HpReal(spec.order(), bits);
    norm += acc.norm();
    eps.emplace(chi.index, acc);
  }
  // nothing outside R^_r
  double leak = 0;
  {
    HpReal total(bits);
    for (long a = 0; a < spec.order(); ++a) total += f[static_cast<std::size_t>(a)].norm();
    total /= HpReal(spec.order(), bits);
    leak = std::abs((total - norm).to_double());
  }
  rep.norm_deviation = std::abs(norm.to_double() - 1.0);
  if (rep.norm_deviation > tolerance) rep.failures.push_back("sum |eps|^2 deviates from 1 by " + std::to_string(rep.norm_deviation));
  if (leak > tolerance) rep.failures.push_back("phi has mass outside the span of R^_r");

  // o^x_u-orbits on R^_r
  const auto sub = unit_subgroup(spec, u);
  std::set<long> seen;
  rep.constancy_applies = i <= spec.orbit_count(u);
  for (const auto& [b, e] : eps) {
    if (seen.count(b)) continue;
    std::vector<long> orbit;
    for (const auto& c : sub) {
      const long bc = spec.reduce(b * c.value);
      if (seen.insert(bc).second) orbit.push_back(bc);
    }
    std::ostringstream where;
    where << "orbit of chi_" << b << " (size " << orbit.size() << ")";
    if (rep.constancy_applies) {
      double spread = 0;
      for (long b2 : orbit) spread = std::max(spread, distance(eps.at(b2), e));
      rep.constancy_deviation = std::max(rep.constancy_deviation, spread);
      if (spread > tolerance) rep.failures.push_back("eps not constant on " + where.str());
    } else {
      ComplexHP s(bits);
      for (long b2 : orbit) s += eps.at(b2);
      const double m = s.abs().to_double();
      rep.orbit_sum_max = std::max(rep.orbit_sum_max, m);
      if (m > tolerance) rep.failures.push_back("eps sum does not vanish on " + where.str());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Translation coefficients

bool GammaReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const GammaCheck& c) { return c.ok; });
}

GammaReport gamma_table_check(const Lab& lab, double tolerance) {
  const RingSpec& spec = lab.spec();
  const int bits = lab.bits();
  const long q = spec.q();
  GammaReport rep;
  auto record = [&](std::string what, int r, int s, int i, double dev) {
    rep.checks.push_back({std::move(what), r, s, i, dev, dev <= tolerance});
  };
  const ComplexHP expect11(BigRational(-1, q - 1), bits);
  for (int r = 0; r < spec.ell(); ++r) {
    record("gamma_{r,r}^(1) = -1/(q-1)", r, r, 1, distance(lab.gamma(r, r, 1), expect11));
    for (int s = 0; s <= r; ++s) {
      const auto [lo, hi] = gamma_window(spec, r, s);
      // |gamma|^2 = 1 / (q^{r-s-1} (q-1)^2) inside the window
      const BigRational modulus2 = BigRational(1) / (BigRational(q).pow(r - s - 1) * BigRational((q - 1) * (q - 1)));
      const HpReal m2(modulus2, bits);
      for (int i = 1; i <= spec.orbit_count(r); ++i) {
        const ComplexHP& g = lab.gamma(r, s, i);
        if (s == r && i == 1) continue;
        if (i > lo && i <= hi) {
          record("|gamma|^2 in window", r, s, i, std::abs((g.norm() - m2).to_double()));
        } else {
          record("gamma vanishes outside window", r, s, i, g.abs().to_double());
        }
      }
      // phi_r^(1)(pi^s + a) = sum_i gamma_{r,s}^(i) phi_r^(i)(a)
      const HPTable shifted = translate(lab.phi(r, 1), Point{spec.uniformizer_power(s)});
      HPTable recon(spec, 1, ComplexHP(bits));
      for (int i = 1; i <= spec.orbit_count(r); ++i) {
        HPTable term = lab.phi(r, i);
        term.scale(lab.gamma(r, s, i));
        recon += term;
      }
      const double residual = max_distance(shifted, recon);
      rep.reconstruction_residual = std::max(rep.reconstruction_residual, residual);
      record("expansion of the translate", r, s, 0, residual);
    }
    for (int s = r + 1; s < spec.ell(); ++s) {
      double worst = 0;
      for (const auto& b : orbit_Rr(spec, s))
        worst = std::max(worst, max_distance(translate(lab.phi(r, 1), Point{b.value}), lab.phi(r, 1)));
      record("invariance under R_s, s > r", r, s, 1, worst);
    }
  }
  return rep;
}

}  // namespace kkit
