#include "srret/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace srret::cli {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool positive(const std::optional<double>& v) { return !v || (std::isfinite(*v) && *v > 0.0); }

}  // namespace

void RunConfig::validate() const {
  require(resolution >= 8, "--resolution must be >= 8");
  require(!out.empty(), "--out must name a path or '-'");
  require(positive(x_dimensionless), "--x-dimensionless must be positive");
  require(positive(wavelength) && positive(distance), "--wavelength and --distance must be positive");
  require(wavelength.has_value() == distance.has_value(),
          "--wavelength and --distance must be given together");
  require(!(x_dimensionless && wavelength), "give either --x-dimensionless or --wavelength/--distance");
  require(std::all_of(n_donors.begin(), n_donors.end(), [](unsigned n) { return n >= 2; }),
          "--n-donors values must be >= 2");
  require(std::isfinite(extent) && extent > 0.0, "--extent must be positive");
  require(std::isfinite(alpha) && alpha > 0.0 && std::isfinite(beta) && beta > 0.0,
          "--alpha and --beta must be positive");
  require(std::isfinite(radius) && radius > 0.0, "--radius must be positive");
  require(positive(z0) && positive(z0_min), "--z0 and --z0-min must be positive");
  require(points >= 2, "--points must be >= 2");
  require(k >= 1, "--k must be >= 1");
  require(grid_points >= 8, "--grid-points must be >= 8");
  require(k <= grid_points, "--k cannot exceed --grid-points");
  require(cluster_tol > 0.0 && cluster_tol < std::numbers::pi / 2, "--cluster-tol must lie in (0, pi/2)");
}

double RunConfig::resolve_x(double fallback) const {
  if (x_dimensionless) return *x_dimensionless;
  if (wavelength && distance) return 2.0 * std::numbers::pi * *distance / *wavelength;
  return fallback;
}

double fig1_default_x() { return 2.0 * std::numbers::pi * 1.8 / 19.0; }

Regime parse_regime(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "full") return Regime::Full;
  if (t == "nonretarded") return Regime::NonRetarded;
  throw ConfigError("unknown regime '" + text + "' (expected full or nonretarded)");
}

const char* to_string(Regime regime) { return regime == Regime::Full ? "full" : "nonretarded"; }

}  // namespace srret::cli
