#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "srret/analytic.hpp"
#include "srret/continuum.hpp"
#include "srret/error.hpp"
#include "srret/rates.hpp"
#include "test_support.hpp"

using namespace srret;
using srret::testing::kPi;

namespace {

const Vec3 kOrigin{0, 0, 0};
constexpr double k27_64 = 27.0 / 64.0;

Distribution two_balls(double z0, double r) {
  return Distribution::union_of({Distribution::ball({0, 0, z0}, r), Distribution::ball({0, 0, -z0}, r)});
}

// Cubic-lattice point donors filling the distribution's support.
std::vector<Vec3> lattice_donors(const Distribution& dist, double h) {
  std::vector<Vec3> out;
  for (const auto& c : dist.components()) {
    const auto& b = std::get<UniformBall>(c);
    const int m = static_cast<int>(std::ceil(b.radius / h));
    for (int i = -m; i <= m; ++i)
      for (int j = -m; j <= m; ++j)
        for (int k = -m; k <= m; ++k) {
          const Vec3 off{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
          if (norm(off) < b.radius) out.push_back(b.center + off);
        }
  }
  return out;
}

}  // namespace

TEST(Distribution, InvariantsChecked) {
  EXPECT_THROW(Distribution::ball(kOrigin, 0.0), Error);
  EXPECT_THROW(Distribution::ball(kOrigin, 1.0, -1.0), Error);
  try {
    Distribution::shell(kOrigin, 2.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadShell);
  }
  // Overlapping balls rejected, touching allowed, ball inside a cavity allowed.
  EXPECT_THROW(Distribution::union_of({Distribution::ball({0, 0, 1}, 1.0), Distribution::ball({0, 0, -0.5}, 1.0)}),
               Error);
  EXPECT_NO_THROW(Distribution::union_of({Distribution::ball({0, 0, 1}, 1.0), Distribution::ball({0, 0, -1}, 1.0)}));
  EXPECT_NO_THROW(Distribution::union_of({Distribution::shell(kOrigin, 3.0, 4.0), Distribution::ball({0, 1, 0}, 1.5)}));
  EXPECT_THROW(Distribution::union_of({Distribution::shell(kOrigin, 3.0, 4.0), Distribution::ball({0, 2, 0}, 1.5)}),
               Error);

  EXPECT_NEAR(two_balls(2.0, 1.0).total_number(), 8.0 * kPi / 3.0, 1e-14);
  EXPECT_NEAR(Distribution::shell(kOrigin, 1.0, 2.0, 3.0).total_number(), 3.0 * 4.0 * kPi / 3.0 * 7.0, 1e-13);
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec q;
  EXPECT_NO_THROW(q.validate());
  q.radial_order = 3;
  EXPECT_THROW(q.validate(), Error);
  q = {};
  q.mc_samples = 999;
  EXPECT_THROW(q.validate(), Error);
}

TEST(KernelIntegral, ElectrostaticShellAroundAcceptorVanishes) {
  const auto shell = Distribution::shell(kOrigin, 1e-3, 2.0);
  const CDyad k = kernel_integral(shell, kOrigin, Regime::NonRetarded);
  for (const auto& v : k.m) EXPECT_LE(std::abs(v), 1e-6);
}

TEST(KernelIntegral, LinearInDensity) {
  const auto base = Distribution::union_of({Distribution::ball({0.5, 0, 2.5}, 1.0),
                                            Distribution::shell({-4, 1, 0}, 0.5, 1.5, 0.3)});
  for (Regime r : {Regime::Full, Regime::NonRetarded}) {
    const CDyad k1 = kernel_integral(base, kOrigin, r);
    const CDyad k2 = kernel_integral(base.scaled_density(2.0), kOrigin, r);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(k2.m[i] - 2.0 * k1.m[i]), 0.0, 1e-15);
    EXPECT_NEAR(gamma_incoherent_continuum(base.scaled_density(2.0), kOrigin, r),
                2.0 * gamma_incoherent_continuum(base, kOrigin, r), 1e-14);
  }
}

TEST(KernelIntegral, SingleBallIsPointDipoleTimesVolume) {
  // Outside a uniform ball the electrostatic kernel equals the volume times
  // the tensor evaluated at the centre (mean value property of harmonic fields).
  const Vec3 c{0.7, -1.1, 1.9};
  const CDyad k = kernel_integral(Distribution::ball(c, 1.0), kOrigin, Regime::NonRetarded);
  const CDyad point = green_vacuum(kOrigin, c, Regime::NonRetarded) * cplx(4.0 * kPi / 3.0);
  EXPECT_LE(srret::testing::max_abs_diff(k, point), 1e-14);
}

TEST(KernelIntegral, AcceptorInsideSupportRejected) {
  try {
    kernel_integral(Distribution::ball({0, 0, 0.5}, 1.0), kOrigin, Regime::Full);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AcceptorInsideSupport);
  }
  EXPECT_THROW(fidelity_continuum(Distribution::shell(kOrigin, 1.0, 2.0), {0, 1.5, 0}, Regime::Full), Error);
  EXPECT_THROW(mc_fidelity(Distribution::ball({0, 0, 1}, 1.0), kOrigin, Regime::Full), Error);
}

TEST(GammaSr, ElectrostaticShellSuppressed) {
  const auto shell = Distribution::shell(kOrigin, 1.0, 2.0);
  const double inc = gamma_incoherent_continuum(shell, kOrigin, Regime::NonRetarded);
  EXPECT_GT(inc, 0.0);
  EXPECT_LE(gamma_sr_continuum(shell, kOrigin, Regime::NonRetarded), 1e-10 * inc);
}

TEST(GammaSr, MirrorBallsQuadrupleSingle) {
  const auto one = Distribution::ball({0, 0, 2}, 1.0);
  for (Regime r : {Regime::Full, Regime::NonRetarded}) {
    const double single = gamma_sr_continuum(one, kOrigin, r);
    EXPECT_NEAR(gamma_sr_continuum(two_balls(2.0, 1.0), kOrigin, r) / (4.0 * single), 1.0, 1e-12);
  }
}

TEST(FidelityContinuum, TwoBallsAndSingleBallElectrostatic) {
  EXPECT_NEAR(fidelity_continuum(two_balls(2.0, 1.0), kOrigin, Regime::NonRetarded).fidelity, k27_64, 1e-10);
  EXPECT_NEAR(fidelity_continuum(Distribution::ball({0, 0, 2}, 1.0), kOrigin, Regime::NonRetarded).fidelity,
              k27_64, 1e-10);
  for (auto [z0, r] : std::vector<std::pair<double, double>>{{3, 1}, {10, 1}, {1.2, 1}, {1.05, 1}}) {
    EXPECT_NEAR(fidelity_continuum(two_balls(z0, r), kOrigin, Regime::NonRetarded).fidelity,
                analytic::two_sphere_fidelity_nr(z0, r), 1e-9)
        << z0;
  }
}

TEST(FidelityContinuum, CentredShellMatchesIntegratedClosedForm) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 2}, {5, 6}, {50, 51}, {0.2, 7}, {100, 100.5}}) {
    const double f = fidelity_continuum(Distribution::shell(kOrigin, a, b), kOrigin, Regime::Full).fidelity;
    EXPECT_NEAR(f / analytic::shell_fidelity_integrated({a, b}), 1.0, 1e-10) << a << " " << b;
  }
  EXPECT_NEAR(fidelity_continuum(Distribution::shell(kOrigin, 1, 2), kOrigin, Regime::Full).fidelity, 0.249653,
              1e-6);
}

TEST(FidelityContinuum, OffCentreShellTheorem) {
  const auto shell = Distribution::shell({0.2, -0.1, 0.3}, 1.0, 2.0);
  srret::testing::Gen gen(19);
  for (int k = 0; k < 10; ++k) {
    const Vec3 a = Vec3{0.2, -0.1, 0.3} + gen.unit() * gen.uniform(0.0, 0.9);
    const auto r = fidelity_continuum(shell, a, Regime::NonRetarded);
    EXPECT_LE(r.gamma_sr, 1e-8 * r.gamma_incoherent);
  }
}

TEST(FidelityContinuum, DiscretisationConverges) {
  const auto dist = two_balls(2.0, 1.0);
  for (Regime r : {Regime::Full, Regime::NonRetarded}) {
    const double target = fidelity_continuum(dist, kOrigin, r).fidelity;
    double err = 1.0;
    for (double h : {0.2, 0.1, 0.05}) {
      const auto donors = lattice_donors(dist, h);
      err = std::abs(fidelity({donors, IsotropicAverage{}, r}, kOrigin).fidelity - target) / target;
    }
    EXPECT_LT(err, 0.01);
  }
}

TEST(FidelityContinuum, ThreadCountDoesNotChangeResult) {
  QuadratureSpec q1, q4;
  q4.threads = 4;
  const auto dist = Distribution::union_of({Distribution::ball({3, 0, 0}, 1.0), Distribution::shell({0, 0, 0}, 6, 7)});
  const auto a = fidelity_continuum(dist, {0.1, 0.2, 0}, Regime::Full, q1);
  const auto b = fidelity_continuum(dist, {0.1, 0.2, 0}, Regime::Full, q4);
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.gamma_sr, b.gamma_sr);
}

TEST(McFidelity, TwoBallsWithinThreeSigma) {
  const auto mc = mc_fidelity(two_balls(2.0, 1.0), kOrigin, Regime::NonRetarded);
  EXPECT_EQ(mc.samples, 200000u);
  EXPECT_GT(mc.fidelity_stderr, 0.0);
  EXPECT_LT(mc.fidelity_stderr, 0.01);
  EXPECT_LE(std::abs(mc.estimate.fidelity - k27_64), 3.0 * mc.fidelity_stderr);
}

TEST(McFidelity, SeedDeterministicAndThreadIndependent) {
  QuadratureSpec q;
  q.mc_samples = 50000;
  q.mc_seed = 1234;
  const auto dist = Distribution::ball({0, 0, 3}, 1.0);
  const auto a = mc_fidelity(dist, kOrigin, Regime::Full, q);
  const auto b = mc_fidelity(dist, kOrigin, Regime::Full, q);
  q.threads = 3;
  const auto c = mc_fidelity(dist, kOrigin, Regime::Full, q);
  EXPECT_EQ(a.estimate.fidelity, b.estimate.fidelity);
  EXPECT_EQ(a.fidelity_stderr, b.fidelity_stderr);
  EXPECT_EQ(a.estimate.fidelity, c.estimate.fidelity);
  q.mc_seed = 1235;
  EXPECT_NE(mc_fidelity(dist, kOrigin, Regime::Full, q).estimate.fidelity, a.estimate.fidelity);
}

TEST(McFidelity, CentredElectrostaticShellConsistentWithZero) {
  const auto mc = mc_fidelity(Distribution::shell(kOrigin, 1.0, 2.0), kOrigin, Regime::NonRetarded);
  EXPECT_LE(std::abs(mc.estimate.fidelity), 3.0 * mc.fidelity_stderr);
}

TEST(McFidelity, AgreesWithQuadratureForShell) {
  const auto shell = Distribution::shell(kOrigin, 1.0, 2.0);
  const auto mc = mc_fidelity(shell, kOrigin, Regime::Full);
  const double quad = fidelity_continuum(shell, kOrigin, Regime::Full).fidelity;
  EXPECT_LE(std::abs(mc.estimate.fidelity - quad), 3.0 * mc.fidelity_stderr);
}
