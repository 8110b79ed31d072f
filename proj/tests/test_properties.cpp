// Seeded property tests over randomized ensembles and geometries.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "srret/analytic.hpp"
#include "srret/continuum.hpp"
#include "srret/rates.hpp"
#include "test_support.hpp"

using namespace srret;
using srret::testing::apply;
using srret::testing::Gen;
using srret::testing::kPi;

namespace {

constexpr int kCases = 100;
constexpr std::uint64_t kSeed = 20240611;

struct Scene {
  std::vector<Vec3> donors;
  Vec3 acceptor;
  Regime regime;
};

Scene random_scene(Gen& gen) {
  Scene s;
  s.acceptor = gen.in_box(2.0);
  const int n = gen.integer(1, 10);
  const double spread = std::pow(10.0, gen.uniform(-1.0, 1.5));
  for (int i = 0; i < n; ++i) {
    Vec3 p;
    do {
      p = s.acceptor + gen.in_box(spread);
    } while (distance(p, s.acceptor) < 1e-3 * spread);
    s.donors.push_back(p);
  }
  s.regime = gen.integer(0, 1) ? Regime::Full : Regime::NonRetarded;
  return s;
}

std::vector<Vec3> random_dipoles(Gen& gen, std::size_t n) {
  std::vector<Vec3> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(gen.unit());
  return d;
}

}  // namespace

TEST(RateMatrixProperty, HermitianWithNonNegativeDiagonalAndPsd) {
  Gen gen(kSeed);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    const RateMatrix m = rate_matrix({s.donors, IsotropicAverage{}, s.regime}, s.acceptor);
    const std::size_t n = m.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, m(i, i).real());
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GE(m(i, i).real(), 0.0);
      EXPECT_EQ(m(i, i).imag(), 0.0);
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_LE(std::abs(m(i, j) - std::conj(m(j, i))), 1e-12 * scale);
    }
    // Gram matrix: v^dagger M v >= 0 for random complex v.
    for (int t = 0; t < 5; ++t) {
      std::vector<cplx> v(n);
      double vn = 0.0;
      for (auto& x : v) {
        x = {gen.uniform(-1, 1), gen.uniform(-1, 1)};
        vn += std::norm(x);
      }
      cplx q = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += std::conj(v[i]) * m(i, j) * v[j];
      EXPECT_GE(q.real(), -1e-12 * scale * vn * n);
    }
  }
}

TEST(RateMatrixProperty, FixedDipolesRankOne) {
  Gen gen(kSeed + 1);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    const Vec3 da = gen.unit();
    const auto dd = random_dipoles(gen, s.donors.size());
    const RateMatrix m = rate_matrix({s.donors, FixedDipoles{da, dd}, s.regime}, s.acceptor);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const cplx ai = amplitude(s.acceptor, s.donors[i], da, dd[i], s.regime);
      for (std::size_t j = 0; j < m.size(); ++j) {
        const cplx aj = amplitude(s.acceptor, s.donors[j], da, dd[j], s.regime);
        const cplx expect = ai * std::conj(aj);
        EXPECT_LE(std::abs(m(i, j) - expect), 1e-13 * std::abs(ai) * std::abs(aj) + 1e-300);
      }
    }
  }
}

TEST(FidelityProperty, BoundedByZeroAndOne) {
  Gen gen(kSeed + 2);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    const double f = fidelity({s.donors, IsotropicAverage{}, s.regime}, s.acceptor).fidelity;
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
    const auto dd = random_dipoles(gen, s.donors.size());
    const double g = fidelity({s.donors, FixedDipoles{gen.unit(), dd}, s.regime}, s.acceptor).fidelity;
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0 + 1e-12);
  }
}

TEST(FidelityProperty, RigidRotationInvariant) {
  Gen gen(kSeed + 3);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    const auto q = gen.rotation();
    std::vector<Vec3> rotated;
    for (const auto& p : s.donors) rotated.push_back(apply(q, p));
    const double f0 = fidelity({s.donors, IsotropicAverage{}, s.regime}, s.acceptor).fidelity;
    const double f1 = fidelity({rotated, IsotropicAverage{}, s.regime}, apply(q, s.acceptor)).fidelity;
    EXPECT_NEAR(f0, f1, 1e-12);
  }
}

TEST(FidelityProperty, ElectrostaticScaleInvariant) {
  Gen gen(kSeed + 4);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    const double lambda = std::pow(10.0, gen.uniform(-2.0, 2.0));
    std::vector<Vec3> scaled;
    for (const auto& p : s.donors) scaled.push_back(p * lambda);
    const double f0 = fidelity({s.donors, IsotropicAverage{}, Regime::NonRetarded}, s.acceptor).fidelity;
    const double f1 =
        fidelity({scaled, IsotropicAverage{}, Regime::NonRetarded}, s.acceptor * lambda).fidelity;
    EXPECT_NEAR(f0, f1, 1e-12);
  }
}

TEST(FidelityProperty, PermutationInvariant) {
  Gen gen(kSeed + 5);
  std::mt19937_64 shuffler(kSeed);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    auto shuffled = s.donors;
    std::shuffle(shuffled.begin(), shuffled.end(), shuffler);
    EXPECT_NEAR(fidelity({s.donors, IsotropicAverage{}, s.regime}, s.acceptor).fidelity,
                fidelity({shuffled, IsotropicAverage{}, s.regime}, s.acceptor).fidelity, 1e-12);
  }
}

TEST(FidelityProperty, IncoherentFloorIsOneOverN) {
  Gen gen(kSeed + 6);
  for (int c = 0; c < kCases; ++c) {
    const Scene s = random_scene(gen);
    RateMatrix m = rate_matrix({s.donors, IsotropicAverage{}, s.regime}, s.acceptor);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (i != j) m(i, j) = 0.0;
    EXPECT_NEAR(fidelity_from_matrix(m).fidelity, 1.0 / m.size(), 1e-15);
  }
}

TEST(FidelityProperty, CircleMatchesClosedFormOnGrid) {
  for (std::size_t n = 2; n <= 10; ++n)
    for (double x : {0.01, 0.1, 1.0, 12.0, 100.0}) {
      const double f = fidelity({srret::testing::ring(x, n, 0.3), IsotropicAverage{}, Regime::Full}, {0, 0, 0}).fidelity;
      EXPECT_NEAR(f, analytic::circle_fidelity(n, x), 1e-10) << n << " " << x;
    }
}

TEST(GreenProperty, ReciprocityAndRotationCovariance) {
  Gen gen(kSeed + 7);
  for (int c = 0; c < kCases; ++c) {
    const Vec3 a = gen.in_box(5.0), b = gen.in_box(5.0);
    const auto q = gen.rotation();
    for (Regime r : {Regime::Full, Regime::NonRetarded}) {
      const CDyad g = green_vacuum(a, b, r);
      EXPECT_EQ(srret::testing::max_abs_diff(g, green_vacuum(b, a, r)), 0.0);
      const CDyad rotated = green_vacuum(apply(q, a), apply(q, b), r);
      EXPECT_LE(srret::testing::max_abs_diff(rotated, srret::testing::conjugate_by(q, g)),
                1e-12 * std::max(1.0, g.frobenius_norm()));
      EXPECT_NEAR(trace_pair(g, g).real(), g.frobenius_norm() * g.frobenius_norm(),
                  1e-14 * trace_self(g));
    }
  }
}

TEST(GreenProperty, ElectrostaticScaleLaw) {
  Gen gen(kSeed + 8);
  for (int c = 0; c < kCases; ++c) {
    const Vec3 a = gen.in_box(3.0), b = gen.in_box(3.0);
    const double lambda = std::pow(10.0, gen.uniform(-1.5, 1.5));
    const CDyad g = green_vacuum(a, b, Regime::NonRetarded);
    const CDyad s = green_vacuum(a * lambda, b * lambda, Regime::NonRetarded);
    EXPECT_LE(srret::testing::max_abs_diff(s, g * cplx(std::pow(lambda, -3.0))),
              1e-13 * s.frobenius_norm());
  }
}

TEST(ContinuumProperty, MirrorReflectionThroughAcceptor) {
  Gen gen(kSeed + 9);
  for (int c = 0; c < 10; ++c) {
    const Vec3 acc = gen.in_box(1.0);
    const Vec3 centre = acc + gen.unit() * gen.uniform(2.0, 5.0);
    const auto dist = Distribution::ball(centre, gen.uniform(0.3, 1.5));
    const auto mirror = dist.reflected(acc);
    for (Regime r : {Regime::Full, Regime::NonRetarded}) {
      const auto a = fidelity_continuum(dist, acc, r);
      const auto b = fidelity_continuum(mirror, acc, r);
      EXPECT_NEAR(a.fidelity, b.fidelity, 1e-12);
      EXPECT_NEAR(a.gamma_incoherent / b.gamma_incoherent, 1.0, 1e-12);
    }
  }
}

// Doubling every quadrature order leaves the two-ball electrostatic fidelity
// unchanged to 1e-8, for randomly placed and rotated copies of the benchmark.
TEST(ContinuumProperty, QuadratureRefinementStable) {
  Gen gen(kSeed + 10);
  QuadratureSpec coarse;
  QuadratureSpec fine;
  fine.radial_order *= 2;
  fine.polar_order *= 2;
  fine.azimuthal_order *= 2;
  for (int c = 0; c < kCases; ++c) {
    const Vec3 acc = gen.in_box(3.0);
    const Vec3 axis = gen.unit();
    const double z0 = gen.uniform(1.5, 6.0);
    const auto dist = Distribution::union_of(
        {Distribution::ball(acc + axis * z0, 1.0), Distribution::ball(acc - axis * z0, 1.0)});
    const double f0 = fidelity_continuum(dist, acc, Regime::NonRetarded, coarse).fidelity;
    const double f1 = fidelity_continuum(dist, acc, Regime::NonRetarded, fine).fidelity;
    EXPECT_LT(std::abs(f0 - f1), 1e-8);
    EXPECT_NEAR(f0, analytic::two_sphere_fidelity_nr(z0, 1.0), 1e-8);
  }
}

TEST(ContinuumProperty, FidelityInUnitInterval) {
  Gen gen(kSeed + 11);
  for (int c = 0; c < 20; ++c) {
    const Vec3 acc{0, 0, 0};
    const double a = gen.uniform(0.5, 5.0);
    const auto dist = Distribution::union_of({Distribution::shell({0, 0, 0}, a, a + gen.uniform(0.1, 3.0)),
                                              Distribution::ball({0, 0, 0.5 * a}, 0.25 * a)});
    for (Regime r : {Regime::Full, Regime::NonRetarded}) {
      const double f = fidelity_continuum(dist, acc, r).fidelity;
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0 + 1e-12);
    }
  }
}
