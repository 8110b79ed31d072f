#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace srret::analytic {

/// Dimensionless shell radii alpha = a*omega/c < beta = b*omega/c.
struct ShellParams {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Fidelity for n donors on a circle of dimensionless radius x with the
/// acceptor at its centre (isotropic average):
///
///   F = [N^2 (3 + X^2 + 3X^4) + (9 + 3X^2 + X^4) sum_ij cos(2 t_i - 2 t_j)]
///       / [4 N^2 (X^4 + X^2 + 3)]
///
/// `angles` defaults to equal spacing.
double circle_fidelity(std::size_t n, double x,
                       std::optional<std::span<const double>> angles = std::nullopt);

/// (3X^4 + X^2 + 3) / (4 (X^4 + X^2 + 3)): the N >= 3 equal-spacing value.
double circle_closed(double x);

/// Electrostatic fidelity for one ball, or two mirror balls, of radius r at
/// distance z0 from the acceptor: (z0^2 - r^2)^3 / z0^6.
double two_sphere_fidelity_nr(double z0, double r);

/// Reference closed form for an acceptor at the centre of a hollow shell.
/// alpha == 0 returns the limit value 0.
double shell_fidelity(const ShellParams& p);

/// Closed form of the isotropic-average shell fidelity obtained by carrying
/// out the volume integrals directly:
///
///   F = 2 B a^3 b^3 / (d^2 (a^2 + ab + b^2)(a^3 b^3 + a^2 b^2 + a^2 + ab + b^2))
///
/// with d = b - a and the same bracket B as shell_fidelity. Its thin-shell
/// limit is 2/3. This is what the continuum quadrature reproduces.
double shell_fidelity_integrated(const ShellParams& p);

/// |int_a^b r e^{ir} dr|^2 = a^2 + b^2 + 2 - 2 d sin d - 2 (ab + 1) cos d,
/// evaluated without cancellation and divided by d^2.
double shell_bracket_over_d2(double alpha, double beta);

}  // namespace srret::analytic
