#include "diknn/kdtree.hpp"

namespace diknn {

std::vector<double> knn_distance(const PointSet& set, int k, Norm p) {
  const std::size_t n = set.size();
  if (k <= 0) throw UsageError("knn_distance: k must be positive");
  if (static_cast<std::size_t>(k) >= n) {
    throw UsageError("knn_distance: k must be smaller than the point count");
  }
  const KdTree tree(set, p);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = key_to_distance(tree.knn_key_of_row(i, k), p);
  }
  return out;
}

std::size_t range_count(const PointSet& set, std::size_t center, double radius,
                        Norm p, Strictness strict) {
  if (radius < 0.0) throw UsageError("range_count: radius must be >= 0");
  if (center >= set.size()) throw UsageError("range_count: center out of range");
  const KdTree tree(set, p);
  const double key = p == Norm::L2 ? radius * radius : radius;
  return tree.count_within_key(set.row(center), key, strict,
                               static_cast<std::int64_t>(center));
}

}  // namespace diknn
