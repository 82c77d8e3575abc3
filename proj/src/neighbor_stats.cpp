#include "diknn/neighbor_stats.hpp"

#include <cmath>
#include <limits>

#include "diknn/rng.hpp"

namespace diknn {

namespace {

constexpr std::uint64_t kJitterSeed = 0xD1CE5EEDULL;

JointNeighborStats compute_once(const PointSet& joint, int k, Norm p,
                                std::span<const ColumnRange> ranges,
                                Strictness strict) {
  const std::size_t n = joint.size();
  JointNeighborStats out;
  out.rho_key.resize(n);
  out.log_rho.resize(n);
  out.counts.assign(ranges.size(), std::vector<std::uint32_t>(n, 0));

  const KdTree joint_tree(joint, p);
  std::vector<PointSet> projections;
  std::vector<KdTree> trees;
  projections.reserve(ranges.size());
  for (const auto& r : ranges) {
    projections.push_back(joint.slice_columns(r.first, r.count));
  }
  trees.reserve(ranges.size());
  for (const auto& proj : projections) trees.emplace_back(proj, p);

  for (std::size_t i = 0; i < n; ++i) {
    const double key = joint_tree.knn_key_of_row(i, k);
    out.rho_key[i] = key;
    out.log_rho[i] = key > 0.0
                         ? (p == Norm::L2 ? 0.5 * std::log(key) : std::log(key))
                         : -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ranges.size(); ++s) {
      const std::size_t c = trees[s].count_within_key(
          projections[s].row(i), key, strict, static_cast<std::int64_t>(i));
      out.counts[s][i] = static_cast<std::uint32_t>(c);
    }
  }
  return out;
}

}  // namespace

PointSet jitter_points(const PointSet& set) {
  const auto sd = set.column_stddev();
  PointSet out = set;
  Rng rng(kJitterSeed);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.dim(); ++j) {
      const double scale = sd[j] > 0.0 ? sd[j] : 1.0;
      out.at(i, j) += 1e-10 * scale * (2.0 * rng.uniform() - 1.0);
    }
  }
  return out;
}

JointNeighborStats joint_neighbor_stats(const PointSet& joint, int k, Norm p,
                                        std::span<const ColumnRange> ranges,
                                        Strictness strict) {
  const std::size_t n = joint.size();
  if (k <= 0) throw UsageError("neighbor stats: k must be positive");
  if (n <= static_cast<std::size_t>(k)) {
    throw InsufficientDataError("neighbor stats: need more than k rows");
  }
  JointNeighborStats stats = compute_once(joint, k, p, ranges, strict);
  bool degenerate = false;
  for (double key : stats.rho_key) {
    if (key <= 0.0) {
      degenerate = true;
      break;
    }
  }
  if (degenerate) {
    PointSet jittered = jitter_points(joint);
    stats = compute_once(jittered, k, p, ranges, strict);
    stats.jittered = true;
    stats.points = std::move(jittered);
  } else {
    stats.points = joint;
  }
  return stats;
}

NeighborStats neighbor_stats(const EmbeddedDataset& ds, int k, Norm p,
                             std::span<const Subspace> subspaces,
                             Strictness strict) {
  std::vector<ColumnRange> ranges;
  ranges.reserve(subspaces.size());
  for (Subspace s : subspaces) {
    const auto [first, count] = ds.columns_of(s);
    ranges.push_back({first, count});
  }
  const JointNeighborStats raw =
      joint_neighbor_stats(ds.joint, k, p, ranges, strict);
  NeighborStats out;
  out.jittered = raw.jittered;
  out.rho.resize(raw.rho_key.size());
  for (std::size_t i = 0; i < raw.rho_key.size(); ++i) {
    out.rho[i] = key_to_distance(raw.rho_key[i], p);
  }
  for (std::size_t s = 0; s < subspaces.size(); ++s) {
    out.counts[subspaces[s]] = raw.counts[s];
  }
  return out;
}

std::vector<double> knn_distance_jittered(const PointSet& set, int k, Norm p) {
  std::vector<double> d = knn_distance(set, k, p);
  bool degenerate = false;
  for (double v : d) {
    if (v <= 0.0) {
      degenerate = true;
      break;
    }
  }
  if (degenerate) d = knn_distance(jitter_points(set), k, p);
  return d;
}

}  // namespace diknn
