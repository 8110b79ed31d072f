#include "srret/greens.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "srret/error.hpp"

namespace srret {

CDyad CDyad::identity() {
  CDyad d;
  d(0, 0) = d(1, 1) = d(2, 2) = 1.0;
  return d;
}

CDyad& CDyad::operator+=(const CDyad& o) {
  for (std::size_t k = 0; k < 9; ++k) m[k] += o.m[k];
  return *this;
}

CDyad& CDyad::operator*=(cplx s) {
  for (auto& v : m) v *= s;
  return *this;
}

CDyad CDyad::transpose() const {
  CDyad t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

CDyad CDyad::adjoint() const {
  CDyad t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = std::conj((*this)(j, i));
  return t;
}

double CDyad::frobenius_norm() const { return std::sqrt(trace_self(*this)); }

bool CDyad::is_finite() const {
  for (const auto& v : m)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

CDyad operator+(CDyad a, const CDyad& b) { return a += b; }

CDyad operator-(const CDyad& a, const CDyad& b) {
  CDyad r;
  for (std::size_t k = 0; k < 9; ++k) r.m[k] = a.m[k] - b.m[k];
  return r;
}

CDyad operator*(CDyad a, cplx s) { return a *= s; }

CDyad operator*(const CDyad& a, const CDyad& b) {
  CDyad r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < 3; ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

GreenParts green_parts(const Vec3& sep, Regime regime) {
  const double x = norm(sep);
  const double inv = 1.0 / x;
  const Vec3 e = sep * inv;
  const double scale = -inv * inv * inv / (4.0 * std::numbers::pi);
  if (regime == Regime::NonRetarded) return {scale, 3.0 * scale, e};
  const cplx prefactor = std::polar(scale, x);
  return {prefactor * cplx(1.0 - x * x, -x), prefactor * cplx(3.0 - x * x, -3.0 * x), e};
}

CDyad green_vacuum(const Vec3& obs, const Vec3& src, Regime regime, double min_separation) {
  const Vec3 sep = obs - src;
  if (!(norm(sep) >= min_separation)) {
    throw Error(ErrorCode::CoincidentPoints,
                "source and observation points closer than " + std::to_string(min_separation));
  }
  const GreenParts p = green_parts(sep, regime);
  CDyad d;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      cplx v = -p.dyad * (p.e[i] * p.e[j]);
      if (i == j) v += p.iso;
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

cplx trace_pair(const CDyad& g1, const CDyad& g2) {
  // Tr[A B^dagger] = sum_ij A_ij conj(B_ij)
  cplx acc = 0.0;
  for (std::size_t k = 0; k < 9; ++k) acc += g1.m[k] * std::conj(g2.m[k]);
  return acc;
}

double trace_self(const CDyad& g) {
  double acc = 0.0;
  for (const auto& v : g.m) acc += std::norm(v);
  return acc;
}

void require_unit(const Vec3& d, const char* what) {
  if (!is_finite(d) || std::abs(norm(d) - 1.0) > 1e-12) {
    throw Error(ErrorCode::NonUnitDipole, std::string(what) + " is not a unit vector");
  }
}

cplx contract(const Vec3& left, const CDyad& g, const Vec3& right) {
  cplx acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += left[i] * g(i, j) * right[j];
  return acc;
}

cplx amplitude(const Vec3& obs, const Vec3& src, const Vec3& acceptor_dipole,
               const Vec3& donor_dipole, Regime regime, double min_separation) {
  require_unit(acceptor_dipole, "acceptor dipole");
  require_unit(donor_dipole, "donor dipole");
  return contract(acceptor_dipole, green_vacuum(obs, src, regime, min_separation), donor_dipole);
}

}  // namespace srret
