#include "srret/continuum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "srret/error.hpp"
#include "srret/parallel.hpp"

namespace srret {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMcChunk = 4096;

// ---------------------------------------------------------------------------
// Distribution helpers

struct Shape {
  Vec3 center;
  double inner;  // 0 for a ball
  double outer;
  double density;
};

Shape shape_of(const DensityComponent& c) {
  if (const auto* b = std::get_if<UniformBall>(&c)) return {b->center, 0.0, b->radius, b->density};
  const auto& s = std::get<SphericalShell>(c);
  return {s.center, s.inner, s.outer, s.density};
}

double component_number(const Shape& s) {
  return s.density * 4.0 * kPi / 3.0 * (s.outer * s.outer * s.outer - s.inner * s.inner * s.inner);
}

void check_component(const DensityComponent& c) {
  const Shape s = shape_of(c);
  if (!is_finite(s.center)) throw Error(ErrorCode::InvalidArgument, "component centre not finite");
  if (!(s.density > 0.0) || !std::isfinite(s.density)) {
    throw Error(ErrorCode::InvalidArgument, "density must be positive and finite");
  }
  if (std::holds_alternative<UniformBall>(c)) {
    if (!(s.outer > 0.0) || !std::isfinite(s.outer)) {
      throw Error(ErrorCode::InvalidArgument, "ball radius must be positive and finite");
    }
  } else if (!(s.inner >= 0.0) || !(s.outer > s.inner) || !std::isfinite(s.outer)) {
    throw Error(ErrorCode::BadShell, "shell needs 0 <= inner < outer");
  }
}

// Supports may touch but not overlap.
bool disjoint(const Shape& p, const Shape& q) {
  const double d = distance(p.center, q.center);
  return d >= p.outer + q.outer || d + q.outer <= p.inner || d + p.outer <= q.inner;
}

// ---------------------------------------------------------------------------
// Quadrature

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

Rule gauss_legendre(unsigned n) {
  Rule r{std::vector<double>(n), std::vector<double>(n)};
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (unsigned k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  return r;
}

using Panels = std::vector<std::pair<double, double>>;

// Splits [lo, hi] into panels whose width matches their distance from the
// singular point s (outside the interval), refining geometrically toward it.
Panels graded_panels(double lo, double hi, double s) {
  Panels out;
  const bool above = s >= hi;
  const double gap = above ? s - hi : lo - s;
  if (!(gap > 0.0) || gap >= hi - lo) {
    out.emplace_back(lo, hi);
    return out;
  }
  double dist = gap;
  double edge = above ? hi : lo;
  while (out.size() < 200) {
    dist *= 2.0;
    const double next = above ? s - dist : s + dist;
    const bool last = above ? next <= lo : next >= hi;
    if (last) {
      above ? out.emplace_back(lo, edge) : out.emplace_back(edge, hi);
      break;
    }
    above ? out.emplace_back(next, edge) : out.emplace_back(edge, next);
    edge = next;
  }
  return out;
}

// Cuts each panel into pieces(a, b) equal parts.
void split(Panels& panels, const std::function<unsigned(double, double)>& pieces) {
  Panels out;
  for (auto [a, b] : panels) {
    const unsigned m = std::max(1u, pieces(a, b));
    for (unsigned k = 0; k < m; ++k) out.emplace_back(a + (b - a) * k / m, a + (b - a) * (k + 1) / m);
  }
  panels.swap(out);
}

struct Totals {
  CDyad kernel;
  double incoherent = 0.0;
};

// Orthonormal frame whose third axis points from the centre to the acceptor.
struct Frame {
  Vec3 e1, e2, e3;
};

Frame frame_toward(const Vec3& center, const Vec3& target) {
  Vec3 e3 = target - center;
  const double len = norm(e3);
  e3 = len > 0.0 ? e3 * (1.0 / len) : Vec3{0.0, 0.0, 1.0};
  const Vec3 ax = std::abs(e3.x) <= std::abs(e3.y) && std::abs(e3.x) <= std::abs(e3.z)
                      ? Vec3{1.0, 0.0, 0.0}
                      : (std::abs(e3.y) <= std::abs(e3.z) ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0});
  Vec3 e1 = cross(ax, e3);
  e1 *= 1.0 / norm(e1);
  return {e1, cross(e3, e1), e3};
}

Totals integrate_component(const Shape& s, const Vec3& acceptor, Regime regime,
                           const QuadratureSpec& quad, const Rule& radial_rule,
                           const Rule& polar_rule) {
  const Frame fr = frame_toward(s.center, acceptor);
  const double d = distance(s.center, acceptor);
  const bool full = regime == Regime::Full;

  Panels radial = graded_panels(s.inner, s.outer, d);
  if (full) split(radial, [](double a, double b) { return unsigned(std::ceil((b - a) / kPi)); });

  struct Node {
    double r, w;
  };
  std::vector<Node> nodes;
  for (auto [a, b] : radial) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < radial_rule.x.size(); ++i)
      nodes.push_back({mid + half * radial_rule.x[i], half * radial_rule.w[i]});
  }

  const unsigned nphi = quad.azimuthal_order;
  std::vector<double> cphi(nphi), sphi(nphi);
  for (unsigned j = 0; j < nphi; ++j) {
    cphi[j] = std::cos(2.0 * kPi * j / nphi);
    sphi[j] = std::sin(2.0 * kPi * j / nphi);
  }
  const double wphi = 2.0 * kPi / nphi;

  std::vector<Totals> partial(nodes.size());
  parallel_for(nodes.size(), quad.threads, [&](std::size_t k) {
    const double r = nodes[k].r;
    const double radial_weight = s.density * nodes[k].w * r * r;

    Panels polar;
    if (d * r > 0.0) {
      const double u_sing = (r * r + d * d) / (2.0 * r * d);
      polar = graded_panels(-1.0, 1.0, u_sing);
      if (full) {
        split(polar, [&](double a, double b) {
          const double rho_min = std::sqrt(std::max(0.0, r * r + d * d - 2.0 * r * d * b));
          return unsigned(std::ceil(r * d * (b - a) / (std::max(rho_min, 1e-300) * kPi)));
        });
      }
    } else {
      polar.emplace_back(-1.0, 1.0);
    }

    // K = (sum w iso) I - sum w dyad e (x) e, accumulated on the six
    // independent entries of the symmetric dyad part.
    cplx iso = 0.0;
    std::array<cplx, 6> outer{};
    double incoherent = 0.0;
    for (auto [a, b] : polar) {
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (std::size_t i = 0; i < polar_rule.x.size(); ++i) {
        const double u = mid + half * polar_rule.x[i];
        const double sin_t = std::sqrt(std::max(0.0, 1.0 - u * u));
        const double w = radial_weight * half * polar_rule.w[i] * wphi;
        const Vec3 axial = s.center + fr.e3 * (u * r) - acceptor;
        for (unsigned j = 0; j < nphi; ++j) {
          const Vec3 sep = axial + fr.e1 * (r * sin_t * cphi[j]) + fr.e2 * (r * sin_t * sphi[j]);
          const GreenParts g = green_parts(sep, regime);
          const cplx wd = w * g.dyad;
          iso += w * g.iso;
          outer[0] += wd * (g.e.x * g.e.x);
          outer[1] += wd * (g.e.x * g.e.y);
          outer[2] += wd * (g.e.x * g.e.z);
          outer[3] += wd * (g.e.y * g.e.y);
          outer[4] += wd * (g.e.y * g.e.z);
          outer[5] += wd * (g.e.z * g.e.z);
          incoherent += w * trace_self(g);
        }
      }
    }
    Totals t;
    t.incoherent = incoherent;
    constexpr std::size_t slot[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t.kernel(i, j) = (i == j ? iso : 0.0) - outer[slot[i][j]];
    partial[k] = t;
  });

  Totals sum;
  for (const auto& p : partial) {
    sum.kernel += p.kernel;
    sum.incoherent += p.incoherent;
  }
  return sum;
}

void check_acceptor(const Distribution& dist, const Vec3& acceptor, double min_separation) {
  if (!is_finite(acceptor)) throw Error(ErrorCode::InvalidArgument, "acceptor position not finite");
  const double gap = dist.distance_to_support(acceptor);
  if (gap < min_separation) {
    throw Error(ErrorCode::AcceptorInsideSupport,
                "acceptor lies inside (or within " + std::to_string(min_separation) +
                    " of) the donor support; the incoherent integral diverges");
  }
}

Totals integrate(const Distribution& dist, const Vec3& acceptor, Regime regime,
                 const QuadratureSpec& quad) {
  quad.validate();
  check_acceptor(dist, acceptor, quad.min_separation);
  const Rule radial_rule = gauss_legendre(quad.radial_order);
  const Rule polar_rule = gauss_legendre(quad.polar_order);
  Totals out;
  for (const auto& c : dist.components()) {
    const Totals t = integrate_component(shape_of(c), acceptor, regime, quad, radial_rule, polar_rule);
    out.kernel += t.kernel;
    out.incoherent += t.incoherent;
  }
  return out;
}

FidelityResult make_result(double gamma_sr, double gamma_incoherent, double n) {
  if (!(gamma_incoherent > 0.0)) {
    throw Error(ErrorCode::DegenerateEnsemble, "incoherent rate is zero; fidelity undefined");
  }
  return {gamma_sr, gamma_incoherent, n, gamma_sr / (n * gamma_incoherent)};
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct ChunkSums {
  CDyad g;
  double t = 0.0;
  std::uint64_t count = 0;
};

double pair_estimate(const CDyad& sum_g, double sum_t, double n) {
  // Unbiased estimate of Tr[E[G] E[G]^dagger] / E[T] from the sums
  const double pairs = (trace_self(sum_g) - sum_t) / (n * (n - 1.0));
  return pairs / (sum_t / n);
}

}  // namespace

// ---------------------------------------------------------------------------

Distribution::Distribution(std::vector<DensityComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "distribution has no components");
  for (const auto& c : components_) check_component(c);
  for (std::size_t i = 0; i < components_.size(); ++i)
    for (std::size_t j = i + 1; j < components_.size(); ++j)
      if (!disjoint(shape_of(components_[i]), shape_of(components_[j]))) {
        throw Error(ErrorCode::InvalidArgument, "union components " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " overlap");
      }
}

Distribution Distribution::ball(const Vec3& center, double radius, double density) {
  return Distribution({UniformBall{center, radius, density}});
}

Distribution Distribution::shell(const Vec3& center, double inner, double outer, double density) {
  return Distribution({SphericalShell{center, inner, outer, density}});
}

Distribution Distribution::union_of(const std::vector<Distribution>& parts) {
  std::vector<DensityComponent> all;
  for (const auto& p : parts) all.insert(all.end(), p.components_.begin(), p.components_.end());
  return Distribution(std::move(all));
}

double Distribution::total_number() const {
  double n = 0.0;
  for (const auto& c : components_) n += component_number(shape_of(c));
  return n;
}

Distribution Distribution::reflected(const Vec3& point) const {
  std::vector<DensityComponent> out = components_;
  for (auto& c : out)
    std::visit([&](auto& comp) { comp.center = 2.0 * point - comp.center; }, c);
  return Distribution(std::move(out));
}

Distribution Distribution::scaled_density(double factor) const {
  std::vector<DensityComponent> out = components_;
  for (auto& c : out) std::visit([&](auto& comp) { comp.density *= factor; }, c);
  return Distribution(std::move(out));
}

double Distribution::distance_to_support(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) {
    const Shape s = shape_of(c);
    const double d = distance(p, s.center);
    double gap = 0.0;
    if (d > s.outer) gap = d - s.outer;
    else if (d < s.inner) gap = s.inner - d;
    best = std::min(best, gap);
  }
  return best;
}

void QuadratureSpec::validate() const {
  if (radial_order < 4 || polar_order < 4 || azimuthal_order < 4) {
    throw Error(ErrorCode::InvalidArgument, "quadrature orders must be >= 4");
  }
  if (mc_samples < 1000) throw Error(ErrorCode::InvalidArgument, "mc_samples must be >= 1000");
  if (!(min_separation > 0.0)) throw Error(ErrorCode::InvalidArgument, "min_separation must be > 0");
}

CDyad kernel_integral(const Distribution& dist, const Vec3& acceptor, Regime regime,
                      const QuadratureSpec& quad) {
  return integrate(dist, acceptor, regime, quad).kernel;
}

double gamma_sr_continuum(const Distribution& dist, const Vec3& acceptor, Regime regime,
                          const QuadratureSpec& quad) {
  return trace_self(kernel_integral(dist, acceptor, regime, quad));
}

double gamma_incoherent_continuum(const Distribution& dist, const Vec3& acceptor, Regime regime,
                                  const QuadratureSpec& quad) {
  return integrate(dist, acceptor, regime, quad).incoherent;
}

FidelityResult fidelity_continuum(const Distribution& dist, const Vec3& acceptor, Regime regime,
                                  const QuadratureSpec& quad) {
  const Totals t = integrate(dist, acceptor, regime, quad);
  return make_result(trace_self(t.kernel), t.incoherent, dist.total_number());
}

McFidelity mc_fidelity(const Distribution& dist, const Vec3& acceptor, Regime regime,
                       const QuadratureSpec& quad) {
  quad.validate();
  check_acceptor(dist, acceptor, quad.min_separation);

  std::vector<Shape> shapes;
  std::vector<double> cumulative;
  double running = 0.0;
  for (const auto& c : dist.components()) {
    shapes.push_back(shape_of(c));
    running += component_number(shapes.back());
    cumulative.push_back(running);
  }
  const double total = running;

  const std::uint64_t chunks = (quad.mc_samples + kMcChunk - 1) / kMcChunk;
  std::vector<ChunkSums> sums(chunks);
  parallel_for(chunks, quad.threads, [&](std::size_t c) {
    const std::uint64_t begin = c * kMcChunk;
    const std::uint64_t count = std::min(kMcChunk, quad.mc_samples - begin);
    std::seed_seq seq{static_cast<std::uint32_t>(quad.mc_seed), static_cast<std::uint32_t>(quad.mc_seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(std::uint64_t(c) >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    ChunkSums acc;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::size_t which = 0;
      if (shapes.size() > 1) {
        const double pick = uniform(gen) * total;
        while (which + 1 < shapes.size() && pick >= cumulative[which]) ++which;
      }
      const Shape& s = shapes[which];
      Vec3 dir{normal(gen), normal(gen), normal(gen)};
      dir *= 1.0 / norm(dir);
      const double a3 = s.inner * s.inner * s.inner;
      const double b3 = s.outer * s.outer * s.outer;
      const double r = std::cbrt(a3 + uniform(gen) * (b3 - a3));
      const CDyad g = green_vacuum(acceptor, s.center + dir * r, regime, 0.0);
      acc.g += g;
      acc.t += trace_self(g);
    }
    acc.count = count;
    sums[c] = acc;
  });

  ChunkSums pooled;
  for (const auto& s : sums) {
    pooled.g += s.g;
    pooled.t += s.t;
    pooled.count += s.count;
  }
  const double n = static_cast<double>(pooled.count);
  const double f = pair_estimate(pooled.g, pooled.t, n);

  double mean = 0.0, m2 = 0.0, used = 0.0;
  for (const auto& s : sums) {
    if (s.count < 2) continue;
    const double fc = pair_estimate(s.g, s.t, static_cast<double>(s.count));
    used += 1.0;
    const double delta = fc - mean;
    mean += delta / used;
    m2 += delta * (fc - mean);
  }
  const double stderr_f = used > 1.0 ? std::sqrt(m2 / (used - 1.0) / used) : 0.0;

  McFidelity out;
  const double incoherent = total * pooled.t / n;
  out.estimate = {f * total * incoherent, incoherent, total, f};
  out.fidelity_stderr = stderr_f;
  out.samples = pooled.count;
  return out;
}

}  // namespace srret
