#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "diknn/point_set.hpp"

namespace diknn {

enum class Strictness { Inclusive, Exclusive };

// Distances are handled internally as metric "keys": squared distance for
// l2, plain max-coordinate distance for l-infinity.  Keys from knn queries
// can be fed back into count_within_key with no loss, so a radius obtained
// as a k-NN distance always re-captures the realizing neighbor exactly.
inline double key_to_distance(double key, Norm p) {
  return p == Norm::L2 ? std::sqrt(key) : key;
}

struct Neighbor {
  double key;           // metric key, see above
  std::uint32_t index;  // row in the original point set
};

// Static k-d tree over a PointSet with exact k-NN and fixed-radius counting
// under l2 or l-infinity.  Small sets (< 256 rows) collapse to a single
// leaf, i.e. a brute-force scan.  Ties at rank k break by ascending row
// index, so query results do not depend on tree shape or platform.
//
// The tree is immutable after construction; all queries are const and safe
// to run concurrently.
class KdTree {
 public:
  KdTree(const PointSet& points, Norm norm, int leaf_size = 16)
      : pts_(points), norm_(norm), leaf_size_(leaf_size) {
    const std::size_t n = pts_.size();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = static_cast<std::uint32_t>(i);
    if (n < 256) leaf_size_ = static_cast<int>(n) + 1;
    nodes_.reserve(2 * n / std::max(leaf_size_, 1) + 2);
    if (n > 0) build(0, n);
  }

  // k nearest neighbors of `query`, skipping rows for which skip(row) is
  // true, ordered by (key, index) ascending.  Throws if fewer than k
  // admissible rows exist.
  template <typename Skip>
  std::vector<Neighbor> knn(std::span<const double> query, int k,
                            Skip&& skip) const {
    Heap heap;
    heap.reserve(static_cast<std::size_t>(k));
    if (!nodes_.empty()) search_knn(0, query.data(), k, heap, skip);
    if (heap.size() < static_cast<std::size_t>(k)) {
      throw UsageError("knn: fewer admissible points than k");
    }
    std::sort_heap(heap.begin(), heap.end(), NeighborWorse{});
    return heap;
  }

  std::vector<Neighbor> knn(std::span<const double> query, int k) const {
    return knn(query, k, [](std::uint32_t) { return false; });
  }

  // Key-distance to the k-th nearest neighbor of row `i`, self excluded.
  double knn_key_of_row(std::size_t i, int k) const {
    const auto nb =
        knn(pts_.row(i), k, [i](std::uint32_t j) { return j == i; });
    return nb.back().key;
  }

  // Number of points with key-distance <= radius_key (Inclusive) or
  // < radius_key (Exclusive) from `query`; `exclude` (if any) is the row id
  // of the query point itself and is not counted.
  std::size_t count_within_key(std::span<const double> query, double radius_key,
                               Strictness strict, std::int64_t exclude = -1) const {
    std::size_t c = 0;
    if (!nodes_.empty()) count_rec(0, query.data(), radius_key, strict, c);
    if (exclude >= 0) {
      // The excluded point is at distance zero from itself.
      const bool self_counted =
          strict == Strictness::Inclusive ? radius_key >= 0.0 : radius_key > 0.0;
      if (self_counted && c > 0) --c;
    }
    return c;
  }

  Norm norm() const { return norm_; }

 private:
  struct Node {
    double split = 0.0;
    std::uint32_t begin = 0, end = 0;  // range in perm_ (leaves)
    std::int32_t left = -1, right = -1;
    std::uint16_t axis = 0;
    bool leaf = true;
    std::vector<double> box_min, box_max;
  };

  struct NeighborWorse {
    bool operator()(const Neighbor& a, const Neighbor& b) const {
      return a.key < b.key || (a.key == b.key && a.index < b.index);
    }
  };
  using Heap = std::vector<Neighbor>;  // max-heap under NeighborWorse

  double point_key(const double* a, const double* b) const {
    const std::size_t d = pts_.dim();
    if (norm_ == Norm::Linf) {
      double m = 0.0;
      for (std::size_t j = 0; j < d; ++j) m = std::max(m, std::abs(a[j] - b[j]));
      return m;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double dj = a[j] - b[j];
      s += dj * dj;
    }
    return s;
  }

  double box_min_key(const Node& nd, const double* q) const {
    const std::size_t d = pts_.dim();
    if (norm_ == Norm::Linf) {
      double m = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double off = 0.0;
        if (q[j] < nd.box_min[j]) off = nd.box_min[j] - q[j];
        else if (q[j] > nd.box_max[j]) off = q[j] - nd.box_max[j];
        m = std::max(m, off);
      }
      return m;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double off = 0.0;
      if (q[j] < nd.box_min[j]) off = nd.box_min[j] - q[j];
      else if (q[j] > nd.box_max[j]) off = q[j] - nd.box_max[j];
      s += off * off;
    }
    return s;
  }

  double box_max_key(const Node& nd, const double* q) const {
    const std::size_t d = pts_.dim();
    if (norm_ == Norm::Linf) {
      double m = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        m = std::max(m, std::max(std::abs(q[j] - nd.box_min[j]),
                                 std::abs(q[j] - nd.box_max[j])));
      }
      return m;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double off = std::max(std::abs(q[j] - nd.box_min[j]),
                                  std::abs(q[j] - nd.box_max[j]));
      s += off * off;
    }
    return s;
  }

  std::int32_t build(std::size_t begin, std::size_t end) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    {
      Node& nd = nodes_.back();
      nd.begin = static_cast<std::uint32_t>(begin);
      nd.end = static_cast<std::uint32_t>(end);
      const std::size_t d = pts_.dim();
      nd.box_min.assign(d, std::numeric_limits<double>::infinity());
      nd.box_max.assign(d, -std::numeric_limits<double>::infinity());
      for (std::size_t i = begin; i < end; ++i) {
        const double* p = pts_.row_ptr(perm_[i]);
        for (std::size_t j = 0; j < d; ++j) {
          nd.box_min[j] = std::min(nd.box_min[j], p[j]);
          nd.box_max[j] = std::max(nd.box_max[j], p[j]);
        }
      }
    }
    if (end - begin <= static_cast<std::size_t>(leaf_size_)) return id;

    // Split on the widest axis at the median.
    std::uint16_t axis = 0;
    double widest = -1.0;
    for (std::size_t j = 0; j < pts_.dim(); ++j) {
      const double w = nodes_[id].box_max[j] - nodes_[id].box_min[j];
      if (w > widest) {
        widest = w;
        axis = static_cast<std::uint16_t>(j);
      }
    }
    if (widest <= 0.0) return id;  // all points identical in every axis

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(perm_.begin() + begin, perm_.begin() + mid,
                     perm_.begin() + end,
                     [this, axis](std::uint32_t a, std::uint32_t b) {
                       const double va = pts_.at(a, axis), vb = pts_.at(b, axis);
                       return va < vb || (va == vb && a < b);
                     });
    const double split = pts_.at(perm_[mid], axis);
    const std::int32_t l = build(begin, mid);
    const std::int32_t r = build(mid, end);
    Node& nd = nodes_[id];
    nd.leaf = false;
    nd.axis = axis;
    nd.split = split;
    nd.left = l;
    nd.right = r;
    return id;
  }

  template <typename Skip>
  void search_knn(std::int32_t id, const double* q, int k, Heap& heap,
                  Skip&& skip) const {
    const Node& nd = nodes_[id];
    if (nd.leaf) {
      for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
        const std::uint32_t row = perm_[i];
        if (skip(row)) continue;
        const Neighbor cand{point_key(q, pts_.row_ptr(row)), row};
        if (heap.size() < static_cast<std::size_t>(k)) {
          heap.push_back(cand);
          std::push_heap(heap.begin(), heap.end(), NeighborWorse{});
        } else if (NeighborWorse{}(cand, heap.front())) {
          std::pop_heap(heap.begin(), heap.end(), NeighborWorse{});
          heap.back() = cand;
          std::push_heap(heap.begin(), heap.end(), NeighborWorse{});
        }
      }
      return;
    }
    const Node& lnode = nodes_[nd.left];
    const Node& rnode = nodes_[nd.right];
    const double lkey = box_min_key(lnode, q);
    const double rkey = box_min_key(rnode, q);
    const std::int32_t first = lkey <= rkey ? nd.left : nd.right;
    const std::int32_t second = lkey <= rkey ? nd.right : nd.left;
    const double first_key = std::min(lkey, rkey);
    const double second_key = std::max(lkey, rkey);
    if (heap.size() < static_cast<std::size_t>(k) || first_key <= heap.front().key) {
      search_knn(first, q, k, heap, skip);
    }
    if (heap.size() < static_cast<std::size_t>(k) || second_key <= heap.front().key) {
      search_knn(second, q, k, heap, skip);
    }
  }

  void count_rec(std::int32_t id, const double* q, double radius_key,
                 Strictness strict, std::size_t& count) const {
    const Node& nd = nodes_[id];
    const double lo = box_min_key(nd, q);
    const bool lo_out = strict == Strictness::Inclusive ? lo > radius_key
                                                        : lo >= radius_key;
    if (lo_out) return;
    const double hi = box_max_key(nd, q);
    const bool hi_in = strict == Strictness::Inclusive ? hi <= radius_key
                                                       : hi < radius_key;
    if (hi_in) {
      count += nd.end - nd.begin;
      return;
    }
    if (nd.leaf) {
      for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
        const double key = point_key(q, pts_.row_ptr(perm_[i]));
        const bool in = strict == Strictness::Inclusive ? key <= radius_key
                                                        : key < radius_key;
        if (in) ++count;
      }
      return;
    }
    count_rec(nd.left, q, radius_key, strict, count);
    count_rec(nd.right, q, radius_key, strict, count);
  }

  const PointSet& pts_;
  Norm norm_;
  int leaf_size_;
  std::vector<std::uint32_t> perm_;
  std::vector<Node> nodes_;
};

// Spec-level conveniences over the tree.

// Distance (not key) from every point to its k-th nearest other point.
std::vector<double> knn_distance(const PointSet& set, int k, Norm p);

// Number of points j != center within `radius` of point `center`.
std::size_t range_count(const PointSet& set, std::size_t center, double radius,
                        Norm p, Strictness strict);

}  // namespace diknn
