#include "srret/cli/commands.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "srret/analytic.hpp"
#include "srret/cli/validate.hpp"
#include "srret/rates.hpp"

namespace srret::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Masked disc around point emitters, as a fraction of the geometry scale X.
constexpr double kMaskFraction = 0.02;

double axis_value(unsigned i, unsigned n, double lo, double hi) { return lo + (hi - lo) * i / (n - 1); }

std::vector<Vec3> square_grid(unsigned n, double half) {
  std::vector<Vec3> grid;
  grid.reserve(std::size_t(n) * n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < n; ++i) grid.push_back({axis_value(i, n, -half, half), axis_value(j, n, -half, half), 0.0});
  return grid;
}

std::vector<Vec3> ring_sites(double radius, unsigned n) {
  std::vector<Vec3> out;
  for (unsigned k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    out.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
  }
  return out;
}

double angular_gap(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * kPi);
  return std::abs(d);
}

double circular_mean(const std::vector<double>& angles) {
  double c = 0.0, s = 0.0;
  for (double a : angles) {
    c += std::cos(a);
    s += std::sin(a);
  }
  return std::atan2(s, c);
}

std::string render(const Table& table, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::Json) os << to_json(table).dump(2) << '\n';
  else write_csv(os, table);
  return os.str();
}

}  // namespace

Table fig1_table(const RunConfig& cfg) {
  const double x1 = cfg.resolve_x(fig1_default_x());
  const Regime regime = cfg.regime.value_or(Regime::Full);
  const auto grid = square_grid(cfg.resolution, cfg.extent * x1);
  const auto map = second_donor_map({x1, 0.0, 0.0}, {0.0, 0.0, 0.0}, grid, IsotropicAverage{}, regime,
                                    {kMaskFraction * x1, cfg.threads});
  Table t{{"x", "y", "F"}, {}};
  t.rows.reserve(map.size());
  for (const auto& p : map) t.rows.push_back({p.point.x, p.point.y, p.fidelity});
  return t;
}

Table fig2_table(const RunConfig& cfg) {
  const double x = cfg.resolve_x(12.0);
  const Regime regime = cfg.regime.value_or(Regime::Full);
  const std::vector<unsigned> counts =
      cfg.n_donors.empty() ? std::vector<unsigned>{2, 3, 4, 5, 8, 10} : cfg.n_donors;
  const auto grid = square_grid(cfg.resolution, x);

  Table t{{"n", "x", "y", "F"}, {}};
  for (unsigned n : counts) {
    const DonorEnsemble ensemble{ring_sites(x, n), IsotropicAverage{}, regime};
    const auto map = fidelity_map(ensemble, grid, {kMaskFraction * x, cfg.threads});
    for (const auto& p : map) {
      const bool inside = norm(p.point) <= x;
      t.rows.push_back({double(n), p.point.x, p.point.y, inside ? p.fidelity : kNaN});
    }
  }
  return t;
}

Table fig3_table(const RunConfig& cfg) {
  const double r0 = cfg.radius;
  const double r1 = std::cbrt(2.0) * r0;
  const double lo = cfg.z0_min.value_or(1.1 * r0);
  const double hi = cfg.z0.value_or(10.0 * r0);
  if (!(lo > r0) || !(hi > lo)) throw ConfigError("fig3 needs radius < z0-min < z0");

  Table t{{"z0", "F_two", "F_one"}, {}};
  for (unsigned i = 0; i < cfg.points; ++i) {
    const double z0 = axis_value(i, cfg.points, lo, hi);
    const double two = analytic::two_sphere_fidelity_nr(z0, r0);
    // The equal-volume single sphere contains the acceptor for z0 <= r1.
    const double one = r1 < z0 ? analytic::two_sphere_fidelity_nr(z0, r1) : kNaN;
    t.rows.push_back({z0, two, one});
  }
  return t;
}

Table fig4_table(const RunConfig& cfg) {
  const unsigned n = cfg.resolution;
  Table t{{"alpha", "beta", "F", "F_integrated"}, {}};
  t.rows.reserve(std::size_t(n) * n);
  for (unsigned i = 0; i < n; ++i) {
    const double a = cfg.alpha * (i + 1) / n;
    for (unsigned j = 0; j < n; ++j) {
      const double b = cfg.beta * (j + 1) / n;
      if (a < b) {
        t.rows.push_back({a, b, analytic::shell_fidelity({a, b}), analytic::shell_fidelity_integrated({a, b})});
      } else {
        t.rows.push_back({a, b, kNaN, kNaN});
      }
    }
  }
  return t;
}

nlohmann::json greedy_report(const RunConfig& cfg) {
  const double x = cfg.resolve_x(fig1_default_x());
  const Regime regime = cfg.regime.value_or(Regime::NonRetarded);
  const auto sites = ring_sites(x, cfg.grid_points);
  const auto result = greedy_place(cfg.k, sites, {0.0, 0.0, 0.0}, IsotropicAverage{}, regime, cfg.threads);

  nlohmann::json placements = nlohmann::json::array();
  std::vector<double> first, antipodal;
  std::size_t other = 0;
  const double ref = 2.0 * kPi * result.indices.front() / cfg.grid_points;
  for (std::size_t s = 0; s < result.indices.size(); ++s) {
    const double angle = 2.0 * kPi * result.indices[s] / cfg.grid_points;
    const Vec3& p = result.placements[s];
    placements.push_back({{"step", s + 1},
                          {"index", result.indices[s]},
                          {"x", p.x},
                          {"y", p.y},
                          {"z", p.z},
                          {"angle", angle},
                          {"fidelity", result.step_fidelity[s]}});
    if (angular_gap(angle, ref) <= cfg.cluster_tol) first.push_back(angle);
    else if (angular_gap(angle, ref + kPi) <= cfg.cluster_tol) antipodal.push_back(angle);
    else ++other;
  }

  nlohmann::json clusters = {{"tolerance", cfg.cluster_tol},
                             {"first", first.size()},
                             {"antipodal", antipodal.size()},
                             {"other", other}};
  if (!first.empty() && !antipodal.empty()) {
    clusters["separation"] = angular_gap(circular_mean(first), circular_mean(antipodal));
  } else {
    clusters["separation"] = nullptr;
  }
  return {{"k", cfg.k},
          {"regime", to_string(regime)},
          {"radius", x},
          {"grid_points", cfg.grid_points},
          {"placements", std::move(placements)},
          {"clusters", std::move(clusters)}};
}

int run_command(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  if (name == "fig1" || name == "fig2" || name == "fig3" || name == "fig4") {
    const Table t = name == "fig1"   ? fig1_table(cfg)
                    : name == "fig2" ? fig2_table(cfg)
                    : name == "fig3" ? fig3_table(cfg)
                                     : fig4_table(cfg);
    write_text(cfg.out, render(t, cfg.format.value_or(OutputFormat::Csv)));
    return kExitOk;
  }
  if (name == "greedy") {
    const auto report = greedy_report(cfg);
    if (cfg.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
      Table t{{"step", "index", "x", "y", "z", "angle", "F"}, {}};
      for (const auto& p : report["placements"]) {
        t.rows.push_back({p["step"].get<double>(), p["index"].get<double>(), p["x"].get<double>(),
                          p["y"].get<double>(), p["z"].get<double>(), p["angle"].get<double>(),
                          p["fidelity"].get<double>()});
      }
      write_text(cfg.out, render(t, OutputFormat::Csv));
    } else {
      write_text(cfg.out, report.dump(2) + "\n");
    }
    return kExitOk;
  }
  if (name == "validate") {
    const ValidationReport report = run_validation(cfg);
    if (cfg.format.value_or(OutputFormat::Json) == OutputFormat::Csv) {
      std::ostringstream os;
      os << "id,passed,value,expected,tolerance\n";
      for (const auto& c : report.checks) {
        os << c.id << ',' << (c.passed ? 1 : 0) << ',' << format_double(c.value) << ','
           << format_double(c.expected) << ',' << format_double(c.tolerance) << '\n';
      }
      write_text(cfg.out, os.str());
    } else {
      write_text(cfg.out, report.to_json().dump(2) + "\n");
    }
    return report.passed() ? kExitOk : kExitValidationFailed;
  }
  throw ConfigError("unknown subcommand '" + name + "'");
}

}  // namespace srret::cli
