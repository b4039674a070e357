#include <random>

#include <gtest/gtest.h>

#include "kkit/components.hpp"
#include "kkit/errors.hpp"
#include "kkit/krawtchouk.hpp"
#include "kkit/spherical.hpp"

using namespace kkit;

namespace {

const ParamVector uniform_params(const RingSpec& spec) {
  return ParamVector::uniform(spec.ell(), BigRational(spec.q() - 1, spec.q()));
}

}  // namespace

TEST(OrbitIndex, Examples) {
  const RingSpec R(2, 2);
  EXPECT_EQ(orbit_index(R, {0, 0, 0}), (MultiIndex{0, 0}));
  EXPECT_EQ(orbit_index(R, {1, 2, 0}), (MultiIndex{1, 1}));
  for (const auto& u : enumerate_X(2, 3)) EXPECT_EQ(orbit_index(R, canonical_point(R, 3, u)), u);
  EXPECT_EQ(char_orbit_index(RingSpec(3, 1), {1, 0}), (MultiIndex{1}));
  EXPECT_EQ(char_orbit_index(R, {0, 0, 0}), (MultiIndex{0, 0}));
}

TEST(OrbitIndex, CharacterOrbitSizes) {
  const RingSpec R(2, 2);
  for (const auto& n : enumerate_X(2, 3))
    EXPECT_EQ(BigRational(character_orbit_count(R, 3, n)), spherical_dimension(n, 3, 2)) << n;
}

TEST(ZonalOracle, Examples) {
  const RingSpec R(3, 2);
  const ZonalOracle oracle(R, 2);
  for (const auto& n : enumerate_X(2, 2)) EXPECT_EQ(oracle.value(n, MultiIndex{0, 0}), BigRational(1));
  for (const auto& x : enumerate_X(2, 2)) EXPECT_EQ(oracle.value(MultiIndex{0, 0}, x), BigRational(1));
  const ZonalOracle hamming(RingSpec(2, 1), 3);
  for (int n = 0; n <= 3; ++n)
    for (int x = 0; x <= 3; ++x)
      EXPECT_EQ(hamming.value(MultiIndex{n}, MultiIndex{x}), kraw1(n, x, BigRational(1, 2), 3));
}

TEST(ZonalOracle, EqualsMultivariateKrawtchouk) {
  for (int p : {2, 3})
    for (int ell = 1; ell <= 3; ++ell)
      for (int N = 1; N <= 4; ++N) {
        const RingSpec R(p, ell);
        if (ipow(p, ell * N) > 6561) continue;
        const ZonalOracle oracle(R, N);
        for (const auto& x : enumerate_X(ell, N)) {
          const auto row = oracle.values(canonical_point(R, N, x));
          for (std::size_t j = 0; j < row.size(); ++j)
            EXPECT_EQ(row[j], kraw_multi(oracle.labels()[j], x, uniform_params(R), N))
                << p << "^" << ell << " N=" << N << " n=" << oracle.labels()[j] << " x=" << x;
        }
      }
}

TEST(ZonalOracle, RepresentativeIndependence) {
  for (int p : {2, 3})
    for (int ell = 1; ell <= 3; ++ell) {
      const RingSpec R(p, ell);
      // every representative at N <= 2
      for (int N = 1; N <= 2; ++N) {
        const ZonalOracle oracle(R, N);
        std::map<MultiIndex, std::vector<BigRational>> ref;
        for (std::size_t i = 0; i < static_cast<std::size_t>(ipow(p, ell * N)); ++i) {
          const Point a = point_at(R, N, i);
          const auto x = orbit_index(R, a);
          if (!ref.count(x)) ref[x] = oracle.values(canonical_point(R, N, x));
          EXPECT_EQ(oracle.values(a), ref[x]) << p << "^" << ell << " a=" << point_to_string(a);
        }
      }
      // random representatives at N = 3, 4
      std::mt19937_64 rng(4242);
      for (int N = 3; N <= 4; ++N) {
        if (ipow(p, ell * N) > 6561) continue;
        const ZonalOracle oracle(R, N);
        std::uniform_int_distribution<long> coord(0, R.order() - 1);
        for (int trial = 0; trial < 12; ++trial) {
          Point a(static_cast<std::size_t>(N));
          for (auto& v : a) v = coord(rng);
          EXPECT_EQ(oracle.values(a), oracle.values(canonical_point(R, N, orbit_index(R, a))));
        }
      }
    }
}

TEST(PhiBasis, Examples) {
  const Lab lab2(RingSpec(2, 1));
  ASSERT_EQ(phi_basis(lab2, 0).size(), 1u);
  EXPECT_TRUE(approx_equal(lab2.phi(0, 1)[0], ComplexHP(BigRational(1), 256), 1e-60));
  EXPECT_TRUE(approx_equal(lab2.phi(0, 1)[1], ComplexHP(BigRational(-1), 256), 1e-60));
  for (int p : {2, 3, 5}) {
    const Lab lab(RingSpec(p, 2));
    for (int r = 0; r < 2; ++r) {
      const HpReal sq = sqrt(HpReal(lab.spec().orbit_count(r), 256));
      EXPECT_LT(distance(lab.phi(r, 1)[0], ComplexHP(sq, HpReal(256))), 1e-60);
    }
  }
}

TEST(PhiBasis, OrthonormalAndRelativelyInvariant) {
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const Lab lab(RingSpec(p, ell));
      const RingSpec& R = lab.spec();
      ASSERT_EQ(lab.basis_size(), R.order());
      for (int j = 0; j < lab.basis_size(); ++j)
        for (int k = 0; k <= j; ++k) {
          const ComplexHP ip = inner_product(lab.basis(j), lab.basis(k));
          const ComplexHP expect(BigRational(j == k ? 1 : 0), 256);
          EXPECT_LT(distance(ip, expect), 1e-30) << p << "^" << ell << " " << j << "," << k;
        }
      for (int r = 0; r < ell; ++r)
        for (int i = 1; i <= R.orbit_count(r); ++i)
          for (long c : lab.units().elements()) {
            const long cinv = unit_inverse(R, c);
            for (long a = 0; a < R.order(); ++a) {
              const ComplexHP lhs = lab.phi(r, i)[static_cast<std::size_t>(R.reduce(cinv * a))];
              const ComplexHP rhs = lab.xi(i).value(c) * lab.phi(r, i)[static_cast<std::size_t>(a)];
              EXPECT_LT(distance(lhs, rhs), 1e-30);
            }
          }
      // phi_r^(1) = I_r^{-1/2} sum_{chi in R^_r} chi
      for (int r = 0; r < ell; ++r) {
        HPTable exact = to_hp(phi1_unnormalized(R, r), 256);
        exact.scale(HpReal(1, 256) / sqrt(HpReal(R.orbit_count(r), 256)));
        EXPECT_LT(max_distance(exact, lab.phi(r, 1)), 1e-30);
      }
    }
}

TEST(EpsilonCoefficients, AllClauses) {
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      if (ipow(p, ell) > 27) continue;
      const Lab lab(RingSpec(p, ell));
      for (int r = 0; r < ell; ++r)
        for (int i = 2; i <= lab.spec().orbit_count(r); ++i) {
          std::vector<Level> us{kMinusInfinity};
          for (int u = 0; u <= r; ++u) us.push_back(u);
          for (Level u : us) {
            const auto rep = epsilon_properties_check(lab, r, i, u, 1e-30);
            EXPECT_TRUE(rep.ok()) << p << "^" << ell << " r=" << r << " i=" << i << " u=" << level_to_string(u)
                                  << ": " << (rep.failures.empty() ? "" : rep.failures.front());
            EXPECT_LT(rep.norm_deviation, 1e-30);
          }
        }
    }
}

TEST(EpsilonCoefficients, VanishingOrbitSumsExample) {
  const Lab lab(RingSpec(3, 2));
  const auto rep = epsilon_properties_check(lab, 1, 3, 0, 1e-30);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.constancy_applies);
  EXPECT_LT(rep.orbit_sum_max, 1e-30);
  EXPECT_THROW(epsilon_properties_check(lab, 1, 1, 0, 1e-30), DomainError);
}

TEST(GammaTable, ValuesModuliAndSupport) {
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const Lab lab(RingSpec(p, ell));
      const auto rep = gamma_table_check(lab, 1e-30);
      for (const auto& c : rep.checks)
        EXPECT_TRUE(c.ok) << p << "^" << ell << " " << c.what << " r=" << c.r << " s=" << c.s << " i=" << c.i
                          << " dev=" << c.deviation;
      EXPECT_LT(rep.reconstruction_residual, 1e-30);
    }
}

TEST(Decomposition, DimensionsAddUp) {
  for (int p : {2, 3})
    for (int ell = 1; ell <= 2; ++ell) {
      const Lab lab(RingSpec(p, ell));
      for (int N = 1; N <= 3; ++N)
        for (const auto& n : enumerate_X(ell, N)) {
          const auto d = vna_decomposition(lab, N, n);
          EXPECT_TRUE(d.ok()) << p << "^" << ell << " N=" << N << " n=" << n;
        }
    }
  const Lab lab(RingSpec(3, 1));
  const auto d = vna_decomposition(lab, 2, MultiIndex{1});
  ASSERT_EQ(d.blocks.size(), 2u);
  for (const auto& b : d.blocks) EXPECT_EQ(b.dim_formula, BigRational(2));
  const auto zero = vna_decomposition(lab, 2, MultiIndex{0});
  ASSERT_EQ(zero.blocks.size(), 1u);
  EXPECT_EQ(vna_basis_words(lab, 2, zero.blocks[0].alpha), (std::vector<std::vector<int>>{{0, 0}}));
}

TEST(Decomposition, BasisIsOrthonormal) {
  const Lab lab(RingSpec(2, 2));
  const int N = 2;
  std::vector<HPTable> all;
  for (const auto& n : enumerate_X(2, N))
    for (const auto& alpha : enumerate_compositions(lab.spec(), n))
      for (const auto& w : vna_basis_words(lab, N, alpha)) all.push_back(materialize(lab, w));
  ASSERT_EQ(static_cast<long>(all.size()), ipow(4, N));
  for (std::size_t j = 0; j < all.size(); ++j)
    for (std::size_t k = 0; k <= j; ++k)
      EXPECT_LT(distance(inner_product(all[j], all[k]), ComplexHP(BigRational(j == k ? 1 : 0), 256)), 1e-30);
}

TEST(Symmetrize, Basics) {
  const RingSpec R(2, 2);
  const auto one = ExactTable(R, 1, CycloNumber::from_rational(2, 2, 1));
  const auto s = symmetrize({one, one}, 3);
  for (const auto& v : s.values()) EXPECT_EQ(v, CycloNumber::from_rational(2, 2, 1));
  // two equal factors at N = 2: one arrangement, not two
  const auto f = phi1_unnormalized(R, 1);
  const auto ff = symmetrize({f, f}, 2);
  for (std::size_t i = 0; i < ff.size(); ++i) {
    const Point a = point_at(R, 2, i);
    EXPECT_EQ(ff[i], f[static_cast<std::size_t>(a[0])] * f[static_cast<std::size_t>(a[1])]);
  }
}

TEST(Symmetrize, ReconstructsZonalFunctions) {
  for (int p : {2, 3})
    for (int ell = 1; ell <= 2; ++ell)
      for (int N = 1; N <= 3; ++N) {
        const RingSpec R(p, ell);
        if (ipow(p, ell * N) > 729) continue;
        const ZonalOracle oracle(R, N);
        for (const auto& n : enumerate_X(ell, N)) {
          if (n.total() == 0) continue;
          std::vector<ExactTable> factors;
          BigRational norm = multinomial(N, n);
          for (int r = 0; r < ell; ++r)
            for (int k = 0; k < n[r]; ++k) {
              factors.push_back(phi1_unnormalized(R, r));
              norm *= BigRational(R.orbit_count(r));
            }
          const auto sym = symmetrize(factors, N);
          const auto omega = oracle.table(n);
          for (std::size_t i = 0; i < sym.size(); ++i) EXPECT_EQ(sym[i] / norm, omega[i]) << p << "^" << ell << " N=" << N << " n=" << n;
        }
      }
}

TEST(ComponentFormula, HandInstance) {
  const Lab lab(RingSpec(2, 2));
  const ZonalOracle oracle(lab.spec(), 3);
  const auto rep = verify_component_formula(lab, oracle, MultiIndex{1, 1}, MultiIndex{1, 1}, 1e-25);
  EXPECT_TRUE(rep.ok());
  EXPECT_LT(rep.max_discrepancy, 1e-25);
  EXPECT_LT(rep.completeness_residual, 1e-25);
  int nonzero = 0;
  for (const auto& r : rep.records) nonzero += r.direct_norm > 1e-10;
  EXPECT_GT(nonzero, 0);
}

TEST(ComponentFormula, TranslationByZeroKeepsOnlyTrivialWeights) {
  const Lab lab(RingSpec(3, 1));
  const ZonalOracle oracle(lab.spec(), 2);
  for (const auto& n : enumerate_X(1, 2)) {
    const auto rep = verify_component_formula(lab, oracle, n, MultiIndex{0}, 1e-25);
    EXPECT_TRUE(rep.ok()) << n;
    for (const auto& r : rep.records) EXPECT_LE(r.w_count, 1);
  }
  // omega_n itself sits in the all-(1) component
  const MultiIndex n{2};
  const HPTable f = omega_table(lab, oracle, n);
  Composition all_first{{{2, 0}}};
  EXPECT_LT(max_distance(component_projection(lab, f, n, all_first, 1e-25), f), 1e-25);
}

TEST(ComponentFormula, SweepsSmallRings) {
  for (const auto& [p, ell, N] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {3, 1, 2}, {2, 1, 3}, {3, 2, 2}}) {
    const Lab lab(RingSpec(p, ell));
    const ZonalOracle oracle(lab.spec(), N);
    for (const auto& n : enumerate_X(ell, N))
      for (const auto& u : enumerate_X(ell, N)) {
        const auto rep = verify_component_formula(lab, oracle, n, u, 1e-25);
        EXPECT_TRUE(rep.ok()) << p << "^" << ell << " N=" << N << " n=" << n << " u=" << u << " max=" << rep.max_discrepancy;
      }
  }
}

TEST(ComponentProjection, RejectsFunctionsOutsideVn) {
  const Lab lab(RingSpec(2, 1));
  const ZonalOracle oracle(lab.spec(), 2);
  const HPTable f = omega_table(lab, oracle, MultiIndex{1});
  const auto alphas = enumerate_compositions(lab.spec(), MultiIndex{2});
  EXPECT_THROW(component_projection(lab, f, MultiIndex{2}, alphas.front(), 1e-25), DomainError);
}

TEST(TranslationIdentity, Examples) {
  const Lab lab(RingSpec(2, 2));
  const ZonalOracle oracle(lab.spec(), 2);
  for (const auto& n : enumerate_X(2, 2)) {
    const auto rec = verify_translation_identity(lab, oracle, n, {0, 0}, {0, 0}, GroupElement::identity(2), 1e-25);
    EXPECT_TRUE(rec.ok);
    EXPECT_EQ(rec.lhs, BigRational(1));
    GroupElement swap{{1, 1}, {1, 0}};
    const auto rec2 = verify_translation_identity(lab, oracle, n, {1, 2}, {1, 2}, swap, 1e-25);
    EXPECT_TRUE(rec2.ok);
    EXPECT_EQ(rec2.lhs, oracle.value(n, orbit_index(lab.spec(), {1, 3})));
  }
}

TEST(TranslationIdentity, RandomizedBothBackends) {
  std::mt19937_64 rng(2024);
  for (int ell = 1; ell <= 2; ++ell)
    for (int N = 1; N <= 2; ++N) {
      const Lab lab(RingSpec(2, ell));
      const ZonalOracle oracle(lab.spec(), N);
      std::uniform_int_distribution<long> coord(0, lab.spec().order() - 1);
      std::uniform_int_distribution<std::size_t> unit(0, lab.units().elements().size() - 1);
      for (const auto& n : enumerate_X(ell, N))
        for (int trial = 0; trial < 10; ++trial) {
          Point a(static_cast<std::size_t>(N)), b(static_cast<std::size_t>(N));
          for (auto& v : a) v = coord(rng);
          for (auto& v : b) v = coord(rng);
          GroupElement g = GroupElement::identity(N);
          for (auto& c : g.units) c = lab.units().elements()[unit(rng)];
          std::shuffle(g.perm.begin(), g.perm.end(), rng);
          EXPECT_TRUE(verify_translation_identity(lab, oracle, n, a, b, g, 1e-25).ok);
          EXPECT_TRUE(verify_translation_identity_exact(oracle, n, a, b, g).ok);
        }
    }
}

TEST(GroupElement, ApplyInverse) {
  const RingSpec R(3, 2);
  GroupElement g{{2, 4, 7}, {2, 0, 1}};
  const Point a{1, 3, 5};
  EXPECT_EQ(g.apply_inverse(R, g.apply(R, a)), a);
  EXPECT_EQ(g.apply(R, g.apply_inverse(R, a)), a);
  // (g a)_k = c_k a_{sigma^{-1}(k)}: a_0 lands in slot 2
  EXPECT_EQ(g.apply(R, a)[2], R.reduce(7 * 1));
}

TEST(SizeGuard, RejectsLargeTables) {
  EXPECT_THROW(ExactTable(RingSpec(3, 3), 5, CycloNumber(3, 3)), SizeGuardError);
}

TEST(OrthogonalityWeight, MatchesOracleInnerProducts) {
  // <omega_n, omega_m> on R^N against the weighted sum over orbit labels
  for (int p : {2, 3})
    for (int ell = 1; ell <= 2; ++ell)
      for (int N = 1; N <= 2; ++N) {
        const RingSpec R(p, ell);
        const ZonalOracle oracle(R, N);
        const auto params = uniform_params(R);
        const BigRational total = BigRational(ipow(p, ell * N));
        for (const auto& n : oracle.labels())
          for (const auto& m : oracle.labels()) {
            const BigRational direct = cyclo_to_rational(inner_product(oracle.table(n), oracle.table(m)));
            BigRational weighted;
            for (const auto& x : oracle.labels())
              weighted += orbit_size(x, N, BigRational(p)) * kraw_multi(n, x, params, N) * kraw_multi(m, x, params, N);
            EXPECT_EQ(direct, weighted / total) << p << "^" << ell << " N=" << N << " " << n << " " << m;
            EXPECT_EQ(direct, n == m ? BigRational(1) / spherical_dimension(n, N, BigRational(p)) : BigRational(0));
          }
      }
}
