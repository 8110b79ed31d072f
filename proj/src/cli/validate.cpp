#include "srret/cli/validate.hpp"

#include <algorithm>
#include <chrono>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "srret/analytic.hpp"
#include "srret/continuum.hpp"
#include "srret/rates.hpp"

namespace srret::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPropertyCases = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckResult within(std::string id, std::string name, double value, double expected, double tol,
                   std::string note = {}) {
  const bool ok = std::abs(value - expected) <= tol;
  return {std::move(id), std::move(name), value, expected, tol, ok, std::move(note)};
}

CheckResult at_most(std::string id, std::string name, double value, double bound, std::string note = {}) {
  return {std::move(id), std::move(name), value, 0.0, bound, value <= bound, std::move(note)};
}

std::vector<Vec3> ring(double x, std::size_t n) {
  std::vector<Vec3> out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back({x * std::cos(2 * kPi * k / n), x * std::sin(2 * kPi * k / n), 0.0});
  return out;
}

Distribution two_balls(const Vec3& acc, const Vec3& axis, double z0, double r) {
  return Distribution::union_of({Distribution::ball(acc + axis * z0, r), Distribution::ball(acc - axis * z0, r)});
}

struct Rng {
  std::mt19937_64 gen;
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  Vec3 unit() {
    std::normal_distribution<double> n;
    Vec3 v{n(gen), n(gen), n(gen)};
    return v * (1.0 / norm(v));
  }
  Vec3 box(double h) { return {uniform(-h, h), uniform(-h, h), uniform(-h, h)}; }
  // Rows of a random rotation matrix (axis-angle).
  std::array<Vec3, 3> rotation() {
    const Vec3 k = unit();
    const double t = uniform(0.0, 2 * kPi), c = std::cos(t), s = std::sin(t), v = 1 - c;
    return {Vec3{c + k.x * k.x * v, k.x * k.y * v - k.z * s, k.x * k.z * v + k.y * s},
            Vec3{k.y * k.x * v + k.z * s, c + k.y * k.y * v, k.y * k.z * v - k.x * s},
            Vec3{k.z * k.x * v - k.y * s, k.z * k.y * v + k.x * s, c + k.z * k.z * v}};
  }
};

Vec3 rotate(const std::array<Vec3, 3>& q, const Vec3& v) { return {dot(q[0], v), dot(q[1], v), dot(q[2], v)}; }

void circle_checks(std::vector<CheckResult>& out) {
  const auto start = Clock::now();
  const double target = 62355.0 / 83532.0;
  double worst = 0.0;
  for (std::size_t n = 3; n <= 10; ++n) {
    const double f = fidelity({ring(12.0, n), IsotropicAverage{}, Regime::Full}, {}).fidelity;
    worst = std::max(worst, std::abs(f - target));
  }
  const double two = fidelity({ring(12.0, 2), IsotropicAverage{}, Regime::Full}, {}).fidelity;
  const double elapsed = seconds_since(start);
  out.push_back(within("1a", "circle N=3..10 at X=12 equals 62355/83532", target + worst, target, 1e-10));
  out.push_back(within("1b", "circle N=2 at X=12 equals 1", two, 1.0, 1e-12));
  out.push_back(at_most("1c", "circle checks runtime (s)", elapsed, 1.0));

  out.push_back(within("2a", "circle_closed(1e-4) -> 1/4", analytic::circle_closed(1e-4), 0.25, 1e-6));
  out.push_back(within("2b", "circle_closed(1e4) -> 3/4", analytic::circle_closed(1e4), 0.75, 1e-6));
}

void sphere_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const double target = 27.0 / 64.0;
  QuadratureSpec quad;
  quad.threads = cfg.threads;
  quad.mc_seed = cfg.seed;

  const auto start = Clock::now();
  const auto pair = two_balls({}, {0, 0, 1}, 2.0, 1.0);
  const double f_quad = fidelity_continuum(pair, {}, Regime::NonRetarded, quad).fidelity;
  const auto mc = mc_fidelity(pair, {}, Regime::NonRetarded, quad);
  const double elapsed = seconds_since(start);
  out.push_back(within("3a", "two balls z0=2 R=1 quadrature equals 27/64", f_quad, target, 1e-8));
  out.push_back(within("3b", "two balls Monte Carlo within 3 sigma of 27/64", mc.estimate.fidelity, target,
                       3.0 * mc.fidelity_stderr,
                       "samples=" + std::to_string(mc.samples) + " seed=" + std::to_string(cfg.seed)));
  out.push_back(at_most("3c", "two-ball checks runtime (s)", elapsed, 10.0));

  const double f_single = fidelity_continuum(Distribution::ball({0, 0, 2}, 1.0), {}, Regime::NonRetarded, quad).fidelity;
  out.push_back(within("4", "single ball at z=2 matches the two-ball value", f_single, f_quad, 1e-8));

  // Two spheres of R0 against one sphere of 2^(1/3) R0 over z0/R0 in [1.1, 10].
  double margin = std::numeric_limits<double>::infinity();
  int flagged = 0;
  for (int i = 0; i < 50; ++i) {
    const double z0 = 1.1 + (10.0 - 1.1) * i / 49.0;
    const double r1 = std::cbrt(2.0);
    if (r1 >= z0) {
      ++flagged;
      continue;
    }
    margin = std::min(margin, analytic::two_sphere_fidelity_nr(z0, 1.0) - analytic::two_sphere_fidelity_nr(z0, r1));
  }
  CheckResult dom{"5", "F_two(R0) > F_one(2^(1/3) R0) on every valid sweep point", margin, 0.0, 0.0, margin > 0.0,
                  std::to_string(flagged) + " of 50 points flagged: the single sphere contains the acceptor"};
  out.push_back(dom);
}

void shell_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  QuadratureSpec quad;
  quad.threads = cfg.threads;
  const auto start = Clock::now();
  const auto shell = Distribution::shell({}, 1.0, 2.0);
  double worst = 0.0;
  for (const Vec3& acc : {Vec3{0, 0, 0}, Vec3{0, 0, 0.5}}) {
    const auto r = fidelity_continuum(shell, acc, Regime::NonRetarded, quad);
    worst = std::max(worst, r.gamma_sr / r.gamma_incoherent);
  }
  out.push_back(at_most("6a", "electrostatic shell: gamma_sr / gamma_incoherent (centre and offset 0.5)", worst, 1e-8));
  out.push_back(at_most("6b", "shell suppression runtime (s)", seconds_since(start), 10.0));

  double worst_reference = 0.0, worst_integrated = 0.0;
  for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{5.0, 6.0}, std::pair{50.0, 51.0}}) {
    const double f = fidelity_continuum(Distribution::shell({}, a, b), {}, Regime::Full, quad).fidelity;
    worst_reference = std::max(worst_reference, std::abs(f / analytic::shell_fidelity({a, b}) - 1.0));
    worst_integrated = std::max(worst_integrated, std::abs(f / analytic::shell_fidelity_integrated({a, b}) - 1.0));
  }
  out.push_back(at_most("7a", "shell quadrature vs reference closed form, max relative error", worst_reference, 1e-6,
                        "the reference form differs from the integrated isotropic average"));
  const double thin = fidelity_continuum(Distribution::shell({}, 100.0, 100.5), {}, Regime::Full, quad).fidelity;
  const double thin_target = 16.0 / (3.0 * kPi * kPi);
  out.push_back(within("7b", "thin shell (100, 100.5) within 1% of 16/(3 pi^2)", thin, thin_target, 0.01 * thin_target,
                       "integrated thin-shell limit is 2/3"));
  out.push_back(at_most("7c", "shell quadrature vs integrated closed form, max relative error", worst_integrated, 1e-6));
}

void anchor_checks(std::vector<CheckResult>& out) {
  const Vec3 p{0.4, 1.3, -0.2};
  const double single = fidelity({{p}, IsotropicAverage{}, Regime::Full}, {}).gamma_sr;
  double worst_f = 0.0, worst_rate = 0.0, worst_floor = 0.0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto r = fidelity({std::vector<Vec3>(n, p), IsotropicAverage{}, Regime::Full}, {});
    worst_f = std::max(worst_f, std::abs(r.fidelity - 1.0));
    worst_rate = std::max(worst_rate, std::abs(r.gamma_sr / (double(n * n) * single) - 1.0));

    RateMatrix m = rate_matrix({ring(1.0 + n, n), IsotropicAverage{}, Regime::Full}, {0.1, 0.2, 0.3});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) m(i, j) = 0.0;
    worst_floor = std::max(worst_floor, std::abs(fidelity_from_matrix(m).fidelity - 1.0 / n));
  }
  out.push_back(at_most("8a", "coincident donors: |F - 1|", worst_f, 1e-12));
  out.push_back(at_most("8b", "coincident donors: |gamma_sr / (N^2 gamma) - 1|", worst_rate, 1e-12));
  out.push_back(at_most("8c", "zeroed off-diagonals: |F - 1/N|", worst_floor, 1e-15));
}

void property_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Rng rng{std::mt19937_64(cfg.seed ^ 0x9e3779b97f4a7c15ULL)};
  double herm = 0.0, psd = 0.0, range = 0.0, rot = 0.0, scale = 0.0, recip = 0.0, cov = 0.0;
  for (int c = 0; c < kPropertyCases; ++c) {
    const Vec3 acc = rng.box(2.0);
    const int n = 1 + int(rng.uniform(0.0, 10.0));
    const double spread = std::pow(10.0, rng.uniform(-1.0, 1.5));
    std::vector<Vec3> donors;
    while (donors.size() < std::size_t(n)) {
      const Vec3 p = acc + rng.box(spread);
      if (distance(p, acc) > 1e-3 * spread) donors.push_back(p);
    }
    const Regime regime = c % 2 ? Regime::Full : Regime::NonRetarded;
    const DonorEnsemble e{donors, IsotropicAverage{}, regime};

    const RateMatrix m = rate_matrix(e, acc);
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag = std::max(diag, m(i, i).real());
    for (int i = 0; i < n; ++i) {
      psd = std::max(psd, -m(i, i).real() / diag);
      for (int j = 0; j < n; ++j) herm = std::max(herm, std::abs(m(i, j) - std::conj(m(j, i))) / diag);
    }
    std::vector<cplx> v(n);
    for (auto& x : v) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    cplx q = 0.0;
    double vn = 0.0;
    for (int i = 0; i < n; ++i) {
      vn += std::norm(v[i]);
      for (int j = 0; j < n; ++j) q += std::conj(v[i]) * m(i, j) * v[j];
    }
    psd = std::max(psd, -q.real() / (diag * vn * n));

    const double f = fidelity(e, acc).fidelity;
    range = std::max({range, -f, f - 1.0});

    const auto rmat = rng.rotation();
    std::vector<Vec3> rotated;
    for (const auto& p : donors) rotated.push_back(rotate(rmat, p));
    rot = std::max(rot, std::abs(fidelity({rotated, IsotropicAverage{}, regime}, rotate(rmat, acc)).fidelity - f));

    const double lambda = std::pow(10.0, rng.uniform(-2.0, 2.0));
    std::vector<Vec3> scaled;
    for (const auto& p : donors) scaled.push_back(p * lambda);
    const double f_nr = fidelity({donors, IsotropicAverage{}, Regime::NonRetarded}, acc).fidelity;
    scale = std::max(scale, std::abs(fidelity({scaled, IsotropicAverage{}, Regime::NonRetarded}, acc * lambda).fidelity - f_nr));

    const Vec3 a = rng.box(5.0), b = rng.box(5.0);
    const CDyad g = green_vacuum(a, b, regime);
    const CDyad h = green_vacuum(b, a, regime);
    const CDyad gr = green_vacuum(rotate(rmat, a), rotate(rmat, b), regime);
    const double gn = g.frobenius_norm();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        recip = std::max(recip, std::abs(g(i, j) - h(i, j)) / gn);
        cplx qgq = 0.0;
        for (std::size_t s = 0; s < 3; ++s)
          for (std::size_t t = 0; t < 3; ++t) qgq += rmat[i][int(s)] * g(s, t) * rmat[j][int(t)];
        cov = std::max(cov, std::abs(gr(i, j) - qgq) / std::max(1.0, gn));
      }
  }
  out.push_back(at_most("9a", "rate matrix Hermitian (relative)", herm, 1e-12));
  out.push_back(at_most("9b", "rate matrix PSD (relative negativity)", psd, 1e-12));
  out.push_back(at_most("9c", "F outside [0, 1]", range, 1e-12));
  out.push_back(at_most("9d", "rotation invariance of F", rot, 1e-12));
  out.push_back(at_most("9e", "electrostatic scale invariance of F", scale, 1e-12));
  out.push_back(at_most("9f", "Green tensor reciprocity", recip, 0.0));
  out.push_back(at_most("9g", "Green tensor rotation covariance", cov, 1e-12));

  QuadratureSpec coarse, fine;
  coarse.threads = fine.threads = cfg.threads;
  fine.radial_order *= 2;
  fine.polar_order *= 2;
  fine.azimuthal_order *= 2;
  double refine = 0.0;
  for (int c = 0; c < kPropertyCases; ++c) {
    const Vec3 acc = rng.box(3.0);
    const auto dist = two_balls(acc, rng.unit(), rng.uniform(1.5, 6.0), 1.0);
    refine = std::max(refine, std::abs(fidelity_continuum(dist, acc, Regime::NonRetarded, coarse).fidelity -
                                       fidelity_continuum(dist, acc, Regime::NonRetarded, fine).fidelity));
  }
  out.push_back(at_most("9h", "quadrature refinement change in two-ball F", refine, 1e-8));
}

void greedy_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  const unsigned m = 720;
  const auto g = greedy_place(6, ring(1.0, m), {}, IsotropicAverage{}, Regime::NonRetarded, cfg.threads);
  const double cell = 2.0 * kPi / m;
  const double ref = cell * g.indices.front();
  double c0 = 0, s0 = 0, c1 = 0, s1 = 0;
  int n0 = 0, n1 = 0, stray = 0;
  for (std::size_t idx : g.indices) {
    const double a = cell * idx;
    if (std::abs(std::remainder(a - ref, 2 * kPi)) <= 3 * cell) {
      c0 += std::cos(a), s0 += std::sin(a), ++n0;
    } else if (std::abs(std::remainder(a - ref - kPi, 2 * kPi)) <= 3 * cell) {
      c1 += std::cos(a), s1 += std::sin(a), ++n1;
    } else {
      ++stray;
    }
  }
  double sep = 0.0;
  if (n0 && n1) sep = std::abs(std::remainder(std::atan2(s0, c0) - std::atan2(s1, c1), 2 * kPi));
  CheckResult r = within("10", "greedy 6 donors on a 720-site ring: two clusters separated by pi", sep, kPi, cell,
                         "cluster sizes " + std::to_string(n0) + "/" + std::to_string(n1) + ", stray " +
                             std::to_string(stray));
  r.passed = r.passed && n0 > 0 && n1 > 0 && stray == 0;
  out.push_back(r);
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"id", c.id},
                    {"name", c.name},
                    {"value", c.value},
                    {"expected", c.expected},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed},
                    {"note", c.note}});
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; });
  return {{"passed", passed()}, {"failed", failed}, {"checks", std::move(list)}};
}

ValidationReport run_validation(const RunConfig& cfg) {
  ValidationReport report;
  circle_checks(report.checks);
  sphere_checks(cfg, report.checks);
  shell_checks(cfg, report.checks);
  anchor_checks(report.checks);
  property_checks(cfg, report.checks);
  greedy_checks(cfg, report.checks);
  return report;
}

}  // namespace srret::cli
