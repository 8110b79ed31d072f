#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srret/greens.hpp"

namespace srret::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 2,
  kExitConfigError = 3,
  kExitIoError = 4,
};

enum class OutputFormat { Csv, Json };

/// Bad or inconsistent run parameters.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Output could not be written; the message carries the path.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameters shared by every subcommand. Unset optionals fall back to the
/// subcommand's own defaults.
struct RunConfig {
  std::string out = "-";
  unsigned resolution = 201;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::optional<Regime> regime;
  std::optional<OutputFormat> format;

  // Geometry. Physical lengths only enter through wavelength/distance.
  std::optional<double> x_dimensionless;
  std::optional<double> wavelength;
  std::optional<double> distance;
  std::vector<unsigned> n_donors;
  double extent = 2.0;  ///< fig1/fig2 grid half-width, in units of X
  double alpha = 20.0;  ///< fig4: largest alpha on the grid
  double beta = 20.0;   ///< fig4: largest beta on the grid
  std::optional<double> z0;      ///< fig3: upper end of the z0 sweep
  std::optional<double> z0_min;  ///< fig3: lower end of the z0 sweep
  double radius = 1.0;           ///< fig3: radius R0 of each of the two spheres
  unsigned points = 50;          ///< fig3: sweep length
  unsigned k = 6;                ///< greedy: donors to place
  unsigned grid_points = 720;    ///< greedy: sites on the ring
  double cluster_tol = 0.1;      ///< greedy: cluster half-width in radians

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  /// Dimensionless X from --x-dimensionless or 2*pi*distance/wavelength,
  /// else `fallback`.
  double resolve_x(double fallback) const;
};

/// Default first-donor distance for the two-donor map: 1.8 um at 19 um.
double fig1_default_x();

Regime parse_regime(const std::string& text);
const char* to_string(Regime regime);

}  // namespace srret::cli
