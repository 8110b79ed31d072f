#include "srret/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "srret/error.hpp"
#include "srret/parallel.hpp"

namespace srret {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_orientation(const OrientationMode& orientation, std::size_t n) {
  if (const auto* fixed = std::get_if<FixedDipoles>(&orientation)) {
    if (fixed->donor_dipoles.size() != n) {
      throw Error(ErrorCode::InvalidArgument,
                  "FixedDipoles needs one donor dipole per donor (" + std::to_string(n) +
                      "), got " + std::to_string(fixed->donor_dipoles.size()));
    }
    require_unit(fixed->acceptor_dipole, "acceptor dipole");
    for (const auto& d : fixed->donor_dipoles) require_unit(d, "donor dipole");
  }
}

CDyad donor_dyad(const DonorEnsemble& ensemble, const Vec3& acceptor, std::size_t i) {
  try {
    return green_vacuum(acceptor, ensemble.positions[i], ensemble.regime, ensemble.min_separation);
  } catch (const Error& e) {
    throw Error(e.code(), "donor " + std::to_string(i) + ": " + e.what(), i);
  }
}

double finish(FidelityResult& r) {
  if (!(r.gamma_incoherent > 0.0)) {
    throw Error(ErrorCode::DegenerateEnsemble, "incoherent rate is zero; fidelity undefined");
  }
  r.fidelity = r.gamma_sr / (r.n * r.gamma_incoherent);
  return r.fidelity;
}

void require_nonempty(std::span<const Vec3> grid) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "grid has no points");
}

}  // namespace

RateMatrix rate_matrix(const DonorEnsemble& ensemble, const Vec3& acceptor) {
  const std::size_t n = ensemble.positions.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "ensemble has no donors");
  check_orientation(ensemble.orientation, n);

  std::vector<CDyad> dyads(n);
  for (std::size_t i = 0; i < n; ++i) dyads[i] = donor_dyad(ensemble, acceptor, i);

  RateMatrix out(n);
  if (const auto* fixed = std::get_if<FixedDipoles>(&ensemble.orientation)) {
    std::vector<cplx> amp(n);
    for (std::size_t i = 0; i < n; ++i)
      amp[i] = contract(fixed->acceptor_dipole, dyads[i], fixed->donor_dipoles[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = amp[i] * std::conj(amp[j]);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out(i, i) = trace_self(dyads[i]);
      for (std::size_t j = i + 1; j < n; ++j) {
        out(i, j) = trace_pair(dyads[i], dyads[j]);
        out(j, i) = std::conj(out(i, j));
      }
    }
  }
  return out;
}

FidelityResult fidelity(const DonorEnsemble& ensemble, const Vec3& acceptor) {
  const std::size_t n = ensemble.positions.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "ensemble has no donors");
  check_orientation(ensemble.orientation, n);

  FidelityResult r;
  r.n = static_cast<double>(n);
  if (const auto* fixed = std::get_if<FixedDipoles>(&ensemble.orientation)) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx a =
          contract(fixed->acceptor_dipole, donor_dyad(ensemble, acceptor, i), fixed->donor_dipoles[i]);
      total += a;
      r.gamma_incoherent += std::norm(a);
    }
    r.gamma_sr = std::norm(total);
  } else {
    CDyad total;
    for (std::size_t i = 0; i < n; ++i) {
      const CDyad g = donor_dyad(ensemble, acceptor, i);
      total += g;
      r.gamma_incoherent += trace_self(g);
    }
    r.gamma_sr = trace_self(total);
  }
  finish(r);
  return r;
}

FidelityResult fidelity_from_matrix(const RateMatrix& rates) {
  const std::size_t n = rates.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty rate matrix");
  cplx total = 0.0;
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag += rates(i, i).real();
    for (std::size_t j = 0; j < n; ++j) total += rates(i, j);
  }
  FidelityResult r;
  r.n = static_cast<double>(n);
  r.gamma_sr = total.real();
  r.gamma_incoherent = diag;
  finish(r);
  return r;
}

std::vector<MapPoint> fidelity_map(const DonorEnsemble& ensemble, std::span<const Vec3> grid,
                                   const MapOptions& options) {
  require_nonempty(grid);
  if (ensemble.positions.empty()) throw Error(ErrorCode::InvalidArgument, "ensemble has no donors");
  check_orientation(ensemble.orientation, ensemble.positions.size());

  const double mask = std::max(options.mask_radius, ensemble.min_separation);
  std::vector<MapPoint> out(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t k) {
    const Vec3& acceptor = grid[k];
    out[k] = {acceptor, kNaN};
    for (const auto& p : ensemble.positions)
      if (distance(p, acceptor) < mask) return;
    try {
      out[k].fidelity = fidelity(ensemble, acceptor).fidelity;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateEnsemble) throw;
    }
  });
  return out;
}

std::vector<MapPoint> second_donor_map(const Vec3& donor1, const Vec3& acceptor,
                                       std::span<const Vec3> grid,
                                       const OrientationMode& orientation, Regime regime,
                                       const MapOptions& options) {
  require_nonempty(grid);
  check_orientation(orientation, 2);
  if (distance(donor1, acceptor) < kDefaultMinSeparation) {
    throw Error(ErrorCode::CoincidentPoints, "first donor sits on the acceptor", 0);
  }

  const double mask = std::max(options.mask_radius, kDefaultMinSeparation);
  std::vector<MapPoint> out(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t k) {
    out[k] = {grid[k], kNaN};
    if (distance(grid[k], acceptor) < mask) return;
    DonorEnsemble pair{{donor1, grid[k]}, orientation, regime};
    try {
      out[k].fidelity = fidelity(pair, acceptor).fidelity;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateEnsemble) throw;
    }
  });
  return out;
}

GreedyResult greedy_place(std::size_t k, std::span<const Vec3> donor_grid, const Vec3& acceptor,
                          const OrientationMode& orientation, Regime regime, unsigned threads) {
  require_nonempty(donor_grid);
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "greedy placement needs k >= 1");
  if (k > donor_grid.size()) {
    throw Error(ErrorCode::InvalidArgument, "more donors requested than grid sites");
  }
  check_orientation(orientation, 1);
  const auto* fixed = std::get_if<FixedDipoles>(&orientation);

  // Per-site contribution: the dyad (isotropic) or the amplitude in its (0,0)
  // slot (fixed dipoles), plus the site's own incoherent rate.
  const std::size_t m = donor_grid.size();
  std::vector<CDyad> site(m);
  std::vector<double> self(m);
  parallel_for(m, threads, [&](std::size_t c) {
    CDyad g;
    try {
      g = green_vacuum(acceptor, donor_grid[c], regime);
    } catch (const Error& e) {
      throw Error(e.code(), "grid site " + std::to_string(c) + " sits on the acceptor", c);
    }
    if (fixed) {
      CDyad a;
      a(0, 0) = contract(fixed->acceptor_dipole, g, fixed->donor_dipoles.front());
      g = a;
    }
    site[c] = g;
    self[c] = trace_self(g);
  });

  GreedyResult result;
  std::vector<bool> occupied(m, false);
  std::vector<double> score(m);
  CDyad total;
  double incoherent = 0.0;
  for (std::size_t step = 0; step < k; ++step) {
    const double count = static_cast<double>(step + 1);
    parallel_for(m, threads, [&](std::size_t c) {
      if (occupied[c]) {
        score[c] = -1.0;
        return;
      }
      const double den = count * (incoherent + self[c]);
      score[c] = den > 0.0 ? trace_self(total + site[c]) / den : -1.0;
    });
    const double best = *std::max_element(score.begin(), score.end());
    if (!(best >= 0.0)) {
      throw Error(ErrorCode::DegenerateEnsemble, "no grid site yields a defined fidelity");
    }
    const double cutoff = best - 1e-12 * std::abs(best);
    std::size_t pick = 0;
    while (score[pick] < cutoff) ++pick;

    occupied[pick] = true;
    total += site[pick];
    incoherent += self[pick];
    result.indices.push_back(pick);
    result.placements.push_back(donor_grid[pick]);
    result.step_fidelity.push_back(score[pick]);
  }
  return result;
}

}  // namespace srret
