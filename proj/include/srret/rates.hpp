#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "srret/greens.hpp"
#include "srret/vec3.hpp"

namespace srret {

/// Donors and acceptor randomly oriented: d (x) d -> |d|^2 I / 3 and the pair
/// rate becomes Tr[G_i G_j^dagger] (the 1/9 is absorbed into the reduced rate).
struct IsotropicAverage {};

/// Explicit unit transition dipoles, one per donor.
struct FixedDipoles {
  Vec3 acceptor_dipole;
  std::vector<Vec3> donor_dipoles;
};

using OrientationMode = std::variant<IsotropicAverage, FixedDipoles>;

struct DonorEnsemble {
  std::vector<Vec3> positions;
  OrientationMode orientation = IsotropicAverage{};
  Regime regime = Regime::Full;
  double min_separation = kDefaultMinSeparation;
};

/// N x N Hermitian matrix of reduced pair rates Gamma_ij.
class RateMatrix {
 public:
  explicit RateMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<cplx> entries_;
};

struct FidelityResult {
  double gamma_sr = 0.0;          ///< coherent total, sum over all i, j
  double gamma_incoherent = 0.0;  ///< sum of the diagonal
  double n = 0.0;                 ///< donor count (total number for continua)
  double fidelity = 0.0;          ///< gamma_sr / (n * gamma_incoherent)
};

RateMatrix rate_matrix(const DonorEnsemble& ensemble, const Vec3& acceptor);

/// Superradiant fidelity. Evaluated in O(N) through the summed dyad
/// (or summed amplitude), which equals the sum over all matrix entries.
FidelityResult fidelity(const DonorEnsemble& ensemble, const Vec3& acceptor);

/// Fidelity obtained by literally summing the entries of a rate matrix.
FidelityResult fidelity_from_matrix(const RateMatrix& rates);

struct MapPoint {
  Vec3 point;
  double fidelity;  ///< NaN for masked points
};

struct MapOptions {
  /// Grid points closer than this to an emitter are masked.
  double mask_radius = kDefaultMinSeparation;
  unsigned threads = 1;
};

/// Fidelity of a fixed donor ensemble for each acceptor position in `grid`.
std::vector<MapPoint> fidelity_map(const DonorEnsemble& ensemble, std::span<const Vec3> grid,
                                   const MapOptions& options = {});

/// Fidelity of the pair {donor1, p} for every second-donor position p.
/// FixedDipoles must carry two donor dipoles: donor1's, then the movable one's.
std::vector<MapPoint> second_donor_map(const Vec3& donor1, const Vec3& acceptor,
                                       std::span<const Vec3> grid,
                                       const OrientationMode& orientation, Regime regime,
                                       const MapOptions& options = {});

struct GreedyResult {
  std::vector<std::size_t> indices;  ///< grid index of each placement, in order
  std::vector<Vec3> placements;
  std::vector<double> step_fidelity;  ///< ensemble fidelity after each placement
};

/// Places k donors one at a time, each on the free grid site that maximises
/// the fidelity of the donors placed so far. A site holds at most one donor;
/// candidates within 1e-12 (relative) of the best count as ties and the lowest
/// grid index wins. FixedDipoles must carry exactly one donor dipole, shared
/// by every placed donor.
GreedyResult greedy_place(std::size_t k, std::span<const Vec3> donor_grid, const Vec3& acceptor,
                          const OrientationMode& orientation, Regime regime,
                          unsigned threads = 1);

}  // namespace srret
