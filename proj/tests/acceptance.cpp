// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kkit/addition.hpp"
#include "kkit/components.hpp"
#include "kkit/krawtchouk.hpp"
#include "kkit/residue_ring.hpp"
#include "kkit/spherical.hpp"

using namespace kkit;

namespace {

// Pinned tolerances.
constexpr double kGammaTol = 1e-30;
constexpr double kEpsilonTol = 1e-30;
constexpr double kOrthonormalTol = 1e-30;
constexpr double kComponentTol = 1e-20;
constexpr double kTranslationTol = 1e-25;
constexpr double kInnerProductTol = 1e-20;
constexpr int kBits = 256;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Outcome zonal_equals_krawtchouk() {
  long pairs = 0, bad = 0;
  for (int p : {2, 3})
    for (int ell = 1; ell <= 3; ++ell)
      for (int N = 1; N <= 4; ++N) {
        if (ipow(p, ell * N) > ipow(3, 8)) continue;
        const RingSpec R(p, ell);
        const ZonalOracle oracle(R, N);
        const auto params = ParamVector::uniform(ell, BigRational(p - 1, p));
        for (const auto& x : oracle.labels()) {
          const auto row = oracle.values(canonical_point(R, N, x));
          for (std::size_t j = 0; j < row.size(); ++j) {
            ++pairs;
            if (row[j] != kraw_multi(oracle.labels()[j], x, params, N)) ++bad;
          }
        }
      }
  return {bad == 0, std::to_string(pairs) + " (n,x) pairs, " + std::to_string(bad) + " unequal"};
}

Outcome addition_theorem() {
  AdditionSweep a;
  for (long q : {2, 3, 4, 5, 7, 8, 9}) a.qs.push_back(BigRational(q));
  a.ells = {1};
  a.N_max = 5;
  AdditionSweep b;
  b.qs = {BigRational(2), BigRational(3)};
  b.ells = {2, 3};
  b.N_max = 4;
  long instances = 0, predicted = 0, failures = 0, violations = 0;
  bool ok = true;
  for (const auto& sweep : {a, b}) {
    const auto rep = theorem_verify(sweep);
    instances += rep.instances;
    predicted += rep.predicted;
    failures += static_cast<long>(rep.failures.size());
    violations += rep.support_violations;
    ok = ok && rep.ok();
  }
  std::ostringstream os;
  os << instances << " instances (predicted " << predicted << "), " << failures << " failures, " << violations
     << " support violations";
  return {ok, os.str()};
}

Outcome gamma_values() {
  double worst = 0;
  long checks = 0;
  bool ok = true;
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const Lab lab(RingSpec(p, ell), kBits);
      const auto rep = gamma_table_check(lab, kGammaTol);
      ok = ok && rep.ok();
      worst = std::max(worst, rep.reconstruction_residual);
      for (const auto& c : rep.checks) {
        ++checks;
        worst = std::max(worst, c.deviation);
      }
    }
  return {ok, std::to_string(checks) + " checks, max deviation " + sci(worst)};
}

Outcome dimension_bookkeeping() {
  long cases = 0, bad = 0;
  for (int p : {2, 3})
    for (int ell = 1; ell <= 2; ++ell) {
      const Lab lab(RingSpec(p, ell), kBits);
      for (int N = 1; N <= 3; ++N)
        for (const auto& n : enumerate_X(ell, N)) {
          ++cases;
          const auto d = vna_decomposition(lab, N, n);
          const bool eq35 = BigRational(d.dim_count) == spherical_dimension(n, N, BigRational(p));
          if (!d.ok() || !eq35) ++bad;
        }
    }
  return {bad == 0, std::to_string(cases) + " (p, ell, N, n) cases, " + std::to_string(bad) + " failing"};
}

Outcome component_formula() {
  const Lab lab(RingSpec(2, 2), kBits);
  const ZonalOracle oracle(lab.spec(), 3);
  double worst = 0;
  long components = 0, corollary = 0;
  bool ok = true;
  for (const auto& n : enumerate_X(2, 3))
    for (const MultiIndex& u : {MultiIndex{1, 0}, MultiIndex{1, 1}, MultiIndex{2, 0}}) {
      const auto rep = verify_component_formula(lab, oracle, n, u, kComponentTol);
      ok = ok && rep.ok();
      worst = std::max(worst, rep.max_discrepancy);
      for (const auto& r : rep.records) {
        ++components;
        if (r.corollary_checked) {
          ++corollary;
          worst = std::max(worst, r.corollary_discrepancy);
        }
      }
    }
  return {ok && corollary > 0, std::to_string(components) + " components (" + std::to_string(corollary) +
                                   " also via the t-restricted form), max discrepancy " + sci(worst)};
}

Outcome translation_identity() {
  std::mt19937_64 rng(20240601);
  double worst = 0;
  long cases = 0, bad = 0;
  for (int ell = 1; ell <= 2; ++ell)
    for (int N = 1; N <= 2; ++N) {
      const Lab lab(RingSpec(2, ell), kBits);
      const ZonalOracle oracle(lab.spec(), N);
      const auto& units = lab.units().elements();
      std::uniform_int_distribution<long> coord(0, lab.spec().order() - 1);
      std::uniform_int_distribution<std::size_t> unit(0, units.size() - 1);
      for (const auto& n : enumerate_X(ell, N))
        for (int trial = 0; trial < 100; ++trial) {
          Point a(static_cast<std::size_t>(N)), b(static_cast<std::size_t>(N));
          for (auto& v : a) v = coord(rng);
          for (auto& v : b) v = coord(rng);
          GroupElement g = GroupElement::identity(N);
          for (auto& c : g.units) c = units[unit(rng)];
          std::shuffle(g.perm.begin(), g.perm.end(), rng);
          const auto rec = verify_translation_identity(lab, oracle, n, a, b, g, kTranslationTol);
          ++cases;
          bad += !rec.ok;
          worst = std::max(worst, rec.discrepancy);
        }
    }
  return {bad == 0, std::to_string(cases) + " random cases, max discrepancy " + sci(worst)};
}

Outcome inner_product_formula() {
  const Lab lab(RingSpec(2, 2), kBits);
  const ZonalOracle oracle(lab.spec(), 3);
  std::mt19937_64 rng(59);
  const auto& units = lab.units().elements();
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  double worst = 0, sum_worst = 0;
  long cases = 0, bad = 0;
  for (int t : {0, 1})
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<long> c(3);
      for (auto& v : c) v = units[pick(rng)];
      const auto rep = inner_product_formula_check(lab, oracle, {1, 1}, t, {1, 1}, c, kInnerProductTol);
      ++cases;
      bad += !rep.ok();
      worst = std::max(worst, rep.max_discrepancy);
      sum_worst = std::max(sum_worst, rep.sum_residual);
    }
  return {bad == 0, std::to_string(cases) + " unit vectors, max discrepancy " + sci(worst) + ", sum residual " +
                        sci(sum_worst)};
}

Outcome property_suites() {
  std::vector<std::string> failed;
  long checks = 0;

  // character expansion coefficients of phi: norm, constancy on orbits, vanishing orbit sums
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const Lab lab(RingSpec(p, ell), kBits);
      for (int r = 0; r < ell; ++r)
        for (int i = 2; i <= lab.spec().orbit_count(r); ++i) {
          std::vector<Level> us{kMinusInfinity};
          for (int u = 0; u <= r; ++u) us.push_back(u);
          for (Level u : us) {
            ++checks;
            if (!epsilon_properties_check(lab, r, i, u, kEpsilonTol).ok())
              failed.push_back("epsilon p=" + std::to_string(p) + " ell=" + std::to_string(ell));
          }
        }
    }

  // three orbit criteria for characters agree
  for (int p : {2, 3})
    for (int ell = 1; ell <= 3; ++ell) {
      const RingSpec R(p, ell);
      for (int r = 0; r < ell; ++r) {
        const auto chars = orbit_Rhat_r(R, r);
        std::vector<Level> us{kMinusInfinity};
        for (int u = 0; u <= r; ++u) us.push_back(u);
        for (Level u : us)
          for (const auto& a : chars)
            for (const auto& b : chars) {
              ++checks;
              const bool i = char_orbit_equiv_by(OrbitCriterion::kAction, a, b, u);
              if (i != char_orbit_equiv_by(OrbitCriterion::kRestriction, a, b, u) ||
                  i != char_orbit_equiv_by(OrbitCriterion::kQuotient, a, b, u))
                failed.push_back("orbit criteria p=" + std::to_string(p) + " ell=" + std::to_string(ell));
            }
      }
    }

  // b -> chi_b is bijective and maps R_r onto R^_{ell-r-1}
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const RingSpec R(p, ell);
      std::set<std::vector<long>> tables;
      for (long b = 0; b < R.order(); ++b) {
        std::vector<long> t;
        for (long a = 0; a < R.order(); ++a) t.push_back(AddChar(R, b).exponent(a));
        tables.insert(t);
      }
      ++checks;
      if (static_cast<long>(tables.size()) != R.order()) failed.push_back("isomorphism not injective");
      for (int r = 0; r < ell; ++r) {
        std::set<long> image, target;
        for (const auto& b : orbit_Rr(R, r)) image.insert(AddChar(R, b.value).index);
        for (const auto& chi : orbit_Rhat_r(R, ell - r - 1)) target.insert(chi.index);
        ++checks;
        if (image != target) failed.push_back("isomorphism orbit map p=" + std::to_string(p));
      }
    }

  // phi basis orthonormal, and the tensor bases of all V_{n,alpha} together
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const Lab lab(RingSpec(p, ell), kBits);
      for (int j = 0; j < lab.basis_size(); ++j)
        for (int k = 0; k <= j; ++k) {
          ++checks;
          const ComplexHP ip = inner_product(lab.basis(j), lab.basis(k), kBits);
          if (distance(ip, ComplexHP(BigRational(j == k ? 1 : 0), kBits)) > kOrthonormalTol)
            failed.push_back("phi orthonormality p=" + std::to_string(p) + " ell=" + std::to_string(ell));
        }
    }
  for (const auto& [p, ell, N] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {3, 1, 2}, {2, 1, 3}}) {
    const Lab lab(RingSpec(p, ell), kBits);
    std::vector<HPTable> all;
    for (const auto& n : enumerate_X(ell, N))
      for (const auto& alpha : enumerate_compositions(lab.spec(), n))
        for (const auto& w : vna_basis_words(lab, N, alpha)) all.push_back(materialize(lab, w));
    ++checks;
    if (static_cast<long>(all.size()) != ipow(lab.spec().order(), N)) failed.push_back("tensor basis size");
    for (std::size_t j = 0; j < all.size(); ++j)
      for (std::size_t k = 0; k <= j; ++k) {
        ++checks;
        if (distance(inner_product(all[j], all[k], kBits), ComplexHP(BigRational(j == k ? 1 : 0), kBits)) >
            kOrthonormalTol)
          failed.push_back("tensor basis orthonormality");
      }
  }

  // zonal values do not depend on the orbit representative
  std::mt19937_64 rng(4242);
  for (int p : {2, 3})
    for (int ell = 1; ell <= 3; ++ell) {
      const RingSpec R(p, ell);
      for (int N = 1; N <= 4; ++N) {
        if (ipow(p, ell * N) > ipow(3, 8)) continue;
        const ZonalOracle oracle(R, N);
        std::map<MultiIndex, std::vector<BigRational>> ref;
        auto check = [&](const Point& a) {
          const auto x = orbit_index(R, a);
          if (!ref.count(x)) ref[x] = oracle.values(canonical_point(R, N, x));
          ++checks;
          if (oracle.values(a) != ref[x]) failed.push_back("representative independence");
        };
        if (N <= 2) {
          for (std::size_t i = 0; i < static_cast<std::size_t>(ipow(p, ell * N)); ++i) check(point_at(R, N, i));
        } else {
          std::uniform_int_distribution<long> coord(0, R.order() - 1);
          for (int trial = 0; trial < 25; ++trial) {
            Point a(static_cast<std::size_t>(N));
            for (auto& v : a) v = coord(rng);
            check(a);
          }
        }
      }
    }

  std::string detail = std::to_string(checks) + " checks";
  if (!failed.empty()) detail += ", first failure: " + failed.front();
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"zonal functions equal multivariate Krawtchouk polynomials (exact)", zonal_equals_krawtchouk},
      {"addition theorem, exhaustive sweeps (exact)", addition_theorem},
      {"translation coefficients: values, moduli, support windows (tol 1e-30)", gamma_values},
      {"dimension bookkeeping (exact)", dimension_bookkeeping},
      {"component formula and t-restricted form (tol 1e-20)", component_formula},
      {"translation identity, randomized (tol 1e-25)", translation_identity},
      {"inner-product formula, random units (tol 1e-20)", inner_product_formula},
      {"property suites (tol 1e-30)", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s -- %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
