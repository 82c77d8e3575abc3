#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diknn/point_set.hpp"

namespace diknn {

// Two aligned scalar sequences of equal length.
struct SeriesPair {
  std::vector<double> x;
  std::vector<double> y;
  std::uint64_t seed = 0;
  std::string label;

  std::size_t size() const { return x.size(); }

  // Swapped roles, used to estimate the reverse direction.
  SeriesPair reversed() const { return {y, x, seed, label}; }
};

// Marginal subspaces of the joint embedding row [X^- (m), Y^- (m), Y (1)].
// Every subspace is a contiguous column range of the joint layout.
enum class Subspace { XPast, YPast, YPastY, YPastXPast, Joint };

// Delay embedding of a series pair at Markov order m.  Row r (time index
// i = r + m, zero-based) holds x_{i-m..i-1}, y_{i-m..i-1}, y_i.
struct EmbeddedDataset {
  PointSet joint;  // dimension 2m + 1
  int m = 0;
  std::size_t n_effective = 0;           // = N - m
  std::vector<std::size_t> index_map;    // row -> time index of the response

  // Column range [first, first + count) of a subspace.
  std::pair<std::size_t, std::size_t> columns_of(Subspace s) const;
  std::size_t subspace_dim(Subspace s) const { return columns_of(s).second; }
  PointSet project(Subspace s) const;

  double response(std::size_t row) const { return joint.at(row, 2 * m); }
};

EmbeddedDataset embed(const SeriesPair& pair, int m);

}  // namespace diknn
