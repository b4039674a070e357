#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kkit/bigrational.hpp"
#include "kkit/complex_hp.hpp"
#include "kkit/cyclo.hpp"
#include "kkit/errors.hpp"

using namespace kkit;

TEST(BigRational, CanonicalForm) {
  EXPECT_EQ(BigRational(6, -4).to_string(), "-3/2");
  EXPECT_EQ(BigRational::parse("10/4"), BigRational(5, 2));
  EXPECT_EQ(BigRational::parse("-7").to_string(), "-7");
  EXPECT_TRUE(BigRational(0, 5).is_zero());
  EXPECT_THROW(BigRational(1) / BigRational(0), DomainError);
  EXPECT_THROW(BigRational::parse("1/0"), DomainError);
  EXPECT_THROW(BigRational::parse("abc"), DomainError);
}

TEST(BigRational, PowAndDecimal) {
  EXPECT_EQ(BigRational(2, 3).pow(3), BigRational(8, 27));
  EXPECT_EQ(BigRational(2, 3).pow(-2), BigRational(9, 4));
  EXPECT_EQ(BigRational(0).pow(0), BigRational(1));
  EXPECT_EQ(BigRational(1, 3).to_decimal(5), "0.33333");
  EXPECT_EQ(BigRational(-5, 4).to_decimal(3), "-1.250");
}

TEST(RootOfUnity, Examples) {
  EXPECT_EQ(root_of_unity(2, 1, 1), CycloNumber::from_rational(2, 1, -1));
  EXPECT_EQ(root_of_unity(3, 1, 0), CycloNumber::from_rational(3, 1, 1));
  EXPECT_EQ(root_of_unity(2, 2, 2), CycloNumber::from_rational(2, 2, -1));
  const auto i = root_of_unity(2, 2, 1);
  EXPECT_EQ(i * i, root_of_unity(2, 2, 2));
  EXPECT_EQ(root_of_unity(5, 1, -1), root_of_unity(5, 1, 4));
}

TEST(RootOfUnity, RejectsBadField) {
  EXPECT_THROW(root_of_unity(4, 1, 1), DomainError);
  EXPECT_THROW(root_of_unity(3, 0, 1), DomainError);
}

TEST(RootOfUnity, PowerOfOrderIsOne) {
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const long M = ipow(p, ell);
      const auto one = CycloNumber::from_rational(p, ell, 1);
      for (long k = 0; k < M; ++k) {
        const auto z = root_of_unity(p, ell, k);
        CycloNumber acc = one;
        // square-and-multiply up to M
        CycloNumber base = z;
        for (long e = M; e > 0; e >>= 1) {
          if (e & 1) acc *= base;
          base *= base;
        }
        EXPECT_EQ(acc, one) << "p=" << p << " ell=" << ell << " k=" << k;
      }
    }
}

TEST(CycloToRational, Examples) {
  EXPECT_EQ(cyclo_to_rational(CycloNumber::from_rational(3, 2, 1)), BigRational(1));
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 2; ++ell) {
      CycloNumber s(p, ell);
      for (long k = 0; k < ipow(p, ell); ++k) s += root_of_unity(p, ell, k);
      EXPECT_EQ(cyclo_to_rational(s), BigRational(0));
    }
  try {
    cyclo_to_rational(root_of_unity(3, 1, 1));
    FAIL() << "expected NotRational";
  } catch (const NotRational& e) {
    ASSERT_EQ(e.coeffs().size(), 2u);
    EXPECT_EQ(e.coeffs()[1], BigRational(1));
  }
}

TEST(CycloToRational, CosetSumsVanish) {
  // Cosets of the subgroup of order p^j, 1 <= j <= ell.
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell) {
      const long M = ipow(p, ell);
      for (int j = 1; j <= ell; ++j) {
        const long step = M / ipow(p, j);
        for (long offset = 0; offset < step; ++offset) {
          std::vector<long> counts(static_cast<size_t>(M), 0);
          for (long k = offset; k < M; k += step) counts[static_cast<size_t>(k)] = 1;
          EXPECT_EQ(cyclo_to_rational(CycloNumber::from_exponent_counts(p, ell, counts)), BigRational(0));
        }
      }
    }
}

TEST(CycloConj, Examples) {
  EXPECT_EQ(cyclo_conj(CycloNumber::from_rational(2, 2, 1)), CycloNumber::from_rational(2, 2, 1));
  const auto i = root_of_unity(2, 2, 1);
  EXPECT_EQ(cyclo_conj(i), -i);
  EXPECT_EQ(cyclo_conj(cyclo_conj(i)), i);
}

namespace {

CycloNumber random_cyclo(std::mt19937_64& rng, int p, int ell) {
  std::uniform_int_distribution<long> k(0, ipow(p, ell) - 1);
  std::uniform_int_distribution<long> c(-3, 3);
  CycloNumber z(p, ell);
  for (int t = 0; t < 4; ++t) z += root_of_unity(p, ell, k(rng)) * BigRational(c(rng), 1 + (t % 2));
  return z;
}

}  // namespace

TEST(CycloNumber, RingAxiomsRandomized) {
  std::mt19937_64 rng(20240611);
  for (int p : {2, 3, 5})
    for (int ell = 1; ell <= 3; ++ell)
      for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_cyclo(rng, p, ell);
        const auto b = random_cyclo(rng, p, ell);
        const auto c = random_cyclo(rng, p, ell);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a - a, CycloNumber(p, ell));
        EXPECT_EQ(cyclo_conj(a * b), cyclo_conj(a) * cyclo_conj(b));
        EXPECT_EQ(cyclo_conj(cyclo_conj(a)), a);
      }
}

TEST(CycloNumber, NormIsNonnegativeWhenRational) {
  std::mt19937_64 rng(7);
  int rational_seen = 0;
  for (int p : {2, 3})
    for (int ell = 1; ell <= 2; ++ell)
      for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_cyclo(rng, p, ell);
        const auto n = a * cyclo_conj(a);
        if (!n.is_rational()) continue;
        ++rational_seen;
        EXPECT_GE(cyclo_to_rational(n), BigRational(0));
      }
  // zeta + conj(zeta) style sums for p = 2, ell = 1 are always rational.
  EXPECT_GT(rational_seen, 0);
}

TEST(CycloNumber, EmbedPreservesValue) {
  const auto z = root_of_unity(3, 1, 1);
  const auto w = z.embed(3);
  EXPECT_EQ(w, root_of_unity(3, 3, 9));
  EXPECT_LT(distance(z.to_complex(), w.to_complex()), 1e-70);
}

TEST(ComplexHP, AgreesWithExactValues) {
  std::mt19937_64 rng(99);
  for (int bits : {128, 256}) {
    const double tol = std::ldexp(1.0, 16 - bits);
    for (int p : {2, 3, 5})
      for (int ell = 1; ell <= 3; ++ell)
        for (int trial = 0; trial < 5; ++trial) {
          const auto a = random_cyclo(rng, p, ell);
          const auto b = random_cyclo(rng, p, ell);
          const auto exact = (a * b).to_complex(bits);
          const auto approx = a.to_complex(bits) * b.to_complex(bits);
          EXPECT_LT(distance(exact, approx), tol);
        }
  }
}

TEST(ComplexHP, UnitRootBasics) {
  const auto w = ComplexHP::unit_root(1, 4, 256);
  EXPECT_TRUE(approx_equal(w * w, ComplexHP(BigRational(-1), 256), 1e-70));
  EXPECT_TRUE(approx_equal(w * conj(w), ComplexHP(BigRational(1), 256), 1e-70));
  const auto z = ComplexHP::unit_root(2, 7, 256);
  EXPECT_LT(std::abs(z.abs().to_double() - 1.0), 1e-15);
  EXPECT_TRUE(approx_equal(z / z, ComplexHP(BigRational(1), 256), 1e-70));
}
