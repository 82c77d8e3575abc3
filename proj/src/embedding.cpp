#include "diknn/embedding.hpp"

namespace diknn {

std::pair<std::size_t, std::size_t> EmbeddedDataset::columns_of(
    Subspace s) const {
  const std::size_t um = static_cast<std::size_t>(m);
  switch (s) {
    case Subspace::XPast:      return {0, um};
    case Subspace::YPast:      return {um, um};
    case Subspace::YPastY:     return {um, um + 1};
    case Subspace::YPastXPast: return {0, 2 * um};
    case Subspace::Joint:      return {0, 2 * um + 1};
  }
  throw UsageError("unknown subspace");
}

PointSet EmbeddedDataset::project(Subspace s) const {
  const auto [first, count] = columns_of(s);
  return joint.slice_columns(first, count);
}

EmbeddedDataset embed(const SeriesPair& pair, int m) {
  if (m < 1) throw UsageError("embed: Markov order must be >= 1");
  if (pair.x.size() != pair.y.size()) {
    throw UsageError("embed: series lengths differ");
  }
  const std::size_t n = pair.size();
  const std::size_t um = static_cast<std::size_t>(m);
  if (n < um + 2) {
    throw InsufficientDataError(
        "embed: need at least m + 2 samples for order m = " + std::to_string(m));
  }
  const std::size_t rows = n - um;
  const std::size_t d = 2 * um + 1;
  std::vector<double> data;
  data.reserve(rows * d);
  std::vector<std::size_t> index_map(rows);
  for (std::size_t i = um; i < n; ++i) {
    for (std::size_t j = i - um; j < i; ++j) data.push_back(pair.x[j]);
    for (std::size_t j = i - um; j < i; ++j) data.push_back(pair.y[j]);
    data.push_back(pair.y[i]);
    index_map[i - um] = i;
  }
  EmbeddedDataset ds;
  ds.joint = PointSet(d, std::move(data));
  ds.m = m;
  ds.n_effective = rows;
  ds.index_map = std::move(index_map);
  return ds;
}

}  // namespace diknn
