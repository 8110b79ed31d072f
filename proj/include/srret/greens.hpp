#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "srret/vec3.hpp"

namespace srret {

using cplx = std::complex<double>;

/// Full retarded vacuum tensor, or its electrostatic (f -> 1, g -> 3) limit.
enum class Regime { Full, NonRetarded };

/// Separation below which source and observation point count as coincident.
inline constexpr double kDefaultMinSeparation = 1e-9;

/// Complex 3x3 dyad, row-major.
struct CDyad {
  std::array<cplx, 9> m{};

  cplx& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static CDyad identity();
  static CDyad zero() { return {}; }

  CDyad& operator+=(const CDyad& o);
  CDyad& operator*=(cplx s);

  CDyad transpose() const;
  CDyad adjoint() const;
  cplx trace() const { return m[0] + m[4] + m[8]; }
  double frobenius_norm() const;
  bool is_finite() const;
};

CDyad operator+(CDyad a, const CDyad& b);
CDyad operator-(const CDyad& a, const CDyad& b);
CDyad operator*(CDyad a, cplx s);
CDyad operator*(const CDyad& a, const CDyad& b);

/// Scalar decomposition G = iso * I - dyad * e (x) e of the vacuum tensor at
/// separation vector `sep` (no coincidence check).
struct GreenParts {
  cplx iso;
  cplx dyad;
  Vec3 e;
};

GreenParts green_parts(const Vec3& sep, Regime regime);

/// Tr[G G^dagger] from the scalar parts: 3|iso|^2 - 2 Re(iso conj(dyad)) + |dyad|^2.
inline double trace_self(const GreenParts& p) {
  return 3.0 * std::norm(p.iso) - 2.0 * (p.iso * std::conj(p.dyad)).real() + std::norm(p.dyad);
}

/// Reduced vacuum Green's tensor G(obs, src) in the k*r convention:
///
///   G = -exp(i x) / (4 pi x^3) [ f(x) I - g(x) e (x) e ],   x = |obs - src|
///
/// with f(x) = 1 - i x - x^2 and g(x) = 3 - 3 i x - x^2 (Full) or f = 1,
/// g = 3 (NonRetarded). The delta-function self term is not represented;
/// separations below `min_separation` throw CoincidentPoints.
CDyad green_vacuum(const Vec3& obs, const Vec3& src, Regime regime,
                   double min_separation = kDefaultMinSeparation);

/// Tr[g1 . g2^dagger]. For g1 == g2 this is the squared Frobenius norm.
cplx trace_pair(const CDyad& g1, const CDyad& g2);

/// Squared Frobenius norm, i.e. the real part of trace_pair(g, g).
double trace_self(const CDyad& g);

/// dA . G(obs, src) . dD for unit dipoles; |amplitude|^2 is the reduced
/// fixed-orientation pair rate.
cplx amplitude(const Vec3& obs, const Vec3& src, const Vec3& acceptor_dipole,
               const Vec3& donor_dipole, Regime regime,
               double min_separation = kDefaultMinSeparation);

/// dA . g . dD for an already evaluated dyad.
cplx contract(const Vec3& left, const CDyad& g, const Vec3& right);

/// Throws NonUnitDipole unless |d| is within 1e-12 of one.
void require_unit(const Vec3& d, const char* what);

}  // namespace srret
