#include "srret/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "srret/error.hpp"

namespace srret::analytic {
namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void check_shell(const ShellParams& p) {
  if (!(p.alpha >= 0.0) || !(p.beta > p.alpha) || !std::isfinite(p.beta)) {
    throw Error(ErrorCode::BadShell, "shell needs 0 <= alpha < beta, got alpha=" +
                                         std::to_string(p.alpha) + " beta=" + std::to_string(p.beta));
  }
}

}  // namespace

double circle_fidelity(std::size_t n, double x, std::optional<std::span<const double>> angles) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "circle fidelity needs n >= 2");
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");

  std::vector<double> theta(n);
  if (angles) {
    if (angles->size() != n) {
      throw Error(ErrorCode::BadAngles, "expected " + std::to_string(n) + " angles, got " +
                                            std::to_string(angles->size()));
    }
    theta.assign(angles->begin(), angles->end());
  } else {
    for (std::size_t i = 0; i < n; ++i) theta[i] = 2.0 * std::numbers::pi * i / n;
  }

  // sum_ij cos(2t_i - 2t_j) = |sum_i exp(2 i t_i)|^2
  double c = 0.0, s = 0.0;
  for (double t : theta) {
    c += std::cos(2.0 * t);
    s += std::sin(2.0 * t);
  }
  const double angular = c * c + s * s;

  const double x2 = x * x;
  const double x4 = x2 * x2;
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return (nn * (3.0 + x2 + 3.0 * x4) + (9.0 + 3.0 * x2 + x4) * angular) /
         (4.0 * nn * (x4 + x2 + 3.0));
}

double circle_closed(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
  const double x2 = x * x;
  // Divide through by x^4 for large x so nothing overflows.
  if (x > 1.0) {
    const double u = 1.0 / x2;
    return (3.0 + u + 3.0 * u * u) / (4.0 * (1.0 + u + 3.0 * u * u));
  }
  const double x4 = x2 * x2;
  return (3.0 * x4 + x2 + 3.0) / (4.0 * (x4 + x2 + 3.0));
}

double two_sphere_fidelity_nr(double z0, double r) {
  if (!(z0 > 0.0) || !(r > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "z0 and r must be positive");
  }
  if (r >= z0) {
    throw Error(ErrorCode::AcceptorInsideSphere, "sphere of radius " + std::to_string(r) +
                                                     " at distance " + std::to_string(z0) +
                                                     " contains the acceptor");
  }
  const double q = 1.0 - (r / z0) * (r / z0);
  return q * q * q;
}

double shell_bracket_over_d2(double alpha, double beta) {
  // B = d^2 - 2 d sin d + 2 (ab + 1)(1 - cos d), and 1 - cos d = 2 sin^2(d/2)
  const double d = beta - alpha;
  const double h = sinc(0.5 * d);
  return 1.0 - 2.0 * sinc(d) + (alpha * beta + 1.0) * h * h;
}

double shell_fidelity(const ShellParams& p) {
  check_shell(p);
  const double a = p.alpha, b = p.beta;
  if (a == 0.0) return 0.0;
  const double den = a * b * (a * a + a * b + b * b + 3.0) + 9.0;
  return 16.0 * a * b * shell_bracket_over_d2(a, b) / (std::numbers::pi * std::numbers::pi * den);
}

double shell_fidelity_integrated(const ShellParams& p) {
  check_shell(p);
  const double a = p.alpha, b = p.beta;
  if (a == 0.0) return 0.0;
  const double ab = a * b;
  const double s = a * a + ab + b * b;
  // a^3 b^3 / (a^3 b^3 + a^2 b^2 + s) written to stay finite for huge radii
  const double ratio = 1.0 / (1.0 + 1.0 / ab + s / (ab * ab * ab));
  return 2.0 * shell_bracket_over_d2(a, b) * ratio / s;
}

}  // namespace srret::analytic
