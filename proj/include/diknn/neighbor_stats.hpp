#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "diknn/embedding.hpp"
#include "diknn/kdtree.hpp"
#include "diknn/point_set.hpp"

namespace diknn {

// A marginal projection given as a contiguous column range of a joint set.
struct ColumnRange {
  std::size_t first = 0;
  std::size_t count = 0;
};

// Per-row joint k-NN keys plus, for each requested projection, the number
// of rows falling inside the joint radius under the projected metric.
struct JointNeighborStats {
  std::vector<double> rho_key;   // metric key of the k-th NN in joint space
  std::vector<double> log_rho;   // log of the actual distance
  std::vector<std::vector<std::uint32_t>> counts;  // one vector per range
  bool jittered = false;
  PointSet points;  // joint set actually used (jittered copy if needed)
};

// Computes joint k-NN radii and projected range counts in one pass.
// If any joint k-NN distance is exactly zero (duplicate rows), the whole
// set is perturbed once with deterministic jitter of magnitude
// 1e-10 x per-column standard deviation and the statistics are recomputed.
JointNeighborStats joint_neighbor_stats(const PointSet& joint, int k, Norm p,
                                        std::span<const ColumnRange> ranges,
                                        Strictness strict = Strictness::Inclusive);

// Spec-facing wrapper over an embedded dataset.
struct NeighborStats {
  std::vector<double> rho;  // distance to the k-th NN in the joint space
  std::map<Subspace, std::vector<std::uint32_t>> counts;
  bool jittered = false;
};

NeighborStats neighbor_stats(const EmbeddedDataset& ds, int k, Norm p,
                             std::span<const Subspace> subspaces,
                             Strictness strict = Strictness::Inclusive);

// Deterministic degeneracy jitter (seed fixed in-library so results are
// reproducible without threading a seed through every estimator).
PointSet jitter_points(const PointSet& set);

// k-NN distances of a set with the same degeneracy handling; all returned
// values are strictly positive provided the set has > k distinct rows.
std::vector<double> knn_distance_jittered(const PointSet& set, int k, Norm p);

}  // namespace diknn
