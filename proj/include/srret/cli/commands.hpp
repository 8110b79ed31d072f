#pragma once

#include <string>

#include "json.hpp"
#include "srret/cli/config.hpp"
#include "srret/cli/output.hpp"

namespace srret::cli {

/// Two-donor map: acceptor at the origin, first donor at (X1, 0, 0), the
/// second donor swept over a square grid in the z = 0 plane. Columns x,y,F.
Table fig1_table(const RunConfig& cfg);

/// Acceptor swept inside a circle of N equally spaced donors at radius X,
/// for each requested N. Columns n,x,y,F.
Table fig2_table(const RunConfig& cfg);

/// Two spheres of radius R0 at +-z0 versus one sphere of twice the volume
/// at z0, electrostatic regime. Columns z0,F_two,F_one.
Table fig3_table(const RunConfig& cfg);

/// Acceptor centred in a shell over an (alpha, beta) grid. Columns
/// alpha,beta,F (reference form),F_integrated.
Table fig4_table(const RunConfig& cfg);

/// Greedy placement on a ring of grid_points sites at radius X.
nlohmann::json greedy_report(const RunConfig& cfg);

/// Runs `name` (fig1..fig4, greedy, validate), writes its output and returns
/// the process exit code.
int run_command(const std::string& name, const RunConfig& cfg);

}  // namespace srret::cli
