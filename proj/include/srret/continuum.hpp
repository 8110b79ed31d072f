#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "srret/greens.hpp"
#include "srret/rates.hpp"
#include "srret/vec3.hpp"

namespace srret {

struct UniformBall {
  Vec3 center;
  double radius = 1.0;
  double density = 1.0;
};

struct SphericalShell {
  Vec3 center;
  double inner = 0.0;
  double outer = 1.0;
  double density = 1.0;
};

using DensityComponent = std::variant<UniformBall, SphericalShell>;

/// Piecewise-uniform donor number density: a union of balls and shells with
/// pairwise disjoint supports. Construction validates every invariant.
class Distribution {
 public:
  static Distribution ball(const Vec3& center, double radius, double density = 1.0);
  static Distribution shell(const Vec3& center, double inner, double outer, double density = 1.0);
  static Distribution union_of(const std::vector<Distribution>& parts);

  const std::vector<DensityComponent>& components() const noexcept { return components_; }

  /// Total donor number, density times volume summed over components.
  double total_number() const;

  /// Point reflection of every component through `point`.
  Distribution reflected(const Vec3& point) const;
  /// Every density multiplied by `factor` (> 0).
  Distribution scaled_density(double factor) const;

  /// Distance from `p` to the nearest point of the support (0 inside it).
  double distance_to_support(const Vec3& p) const;

 private:
  explicit Distribution(std::vector<DensityComponent> components);
  std::vector<DensityComponent> components_;
};

struct QuadratureSpec {
  unsigned radial_order = 32;     ///< Gauss-Legendre points per radial panel
  unsigned polar_order = 32;      ///< Gauss-Legendre points per cos(theta) panel
  unsigned azimuthal_order = 64;  ///< trapezoid points in phi
  std::uint64_t mc_samples = 200000;
  std::uint64_t mc_seed = 0;
  unsigned threads = 1;
  double min_separation = kDefaultMinSeparation;

  /// Throws InvalidArgument unless every order is >= 4 and mc_samples >= 1000.
  void validate() const;
};

/// int n(r) G(acceptor, r) dV by a spherical product rule on each component.
CDyad kernel_integral(const Distribution& dist, const Vec3& acceptor, Regime regime,
                      const QuadratureSpec& quad = {});

/// Tr[K K^dagger] with K = kernel_integral(...). The double volume integral
/// over donor pairs factorises into this product of single integrals.
double gamma_sr_continuum(const Distribution& dist, const Vec3& acceptor, Regime regime,
                          const QuadratureSpec& quad = {});

/// int n(r) Tr[G G^dagger] dV.
double gamma_incoherent_continuum(const Distribution& dist, const Vec3& acceptor, Regime regime,
                                  const QuadratureSpec& quad = {});

FidelityResult fidelity_continuum(const Distribution& dist, const Vec3& acceptor, Regime regime,
                                  const QuadratureSpec& quad = {});

struct McFidelity {
  FidelityResult estimate;
  double fidelity_stderr = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo estimate of the same quantities. Samples come in fixed-size
/// chunks, each with its own stream seeded from (mc_seed, chunk index), and
/// are reduced in chunk order, so the result does not depend on threads.
McFidelity mc_fidelity(const Distribution& dist, const Vec3& acceptor, Regime regime,
                       const QuadratureSpec& quad = {});

}  // namespace srret
