#include "diknn/markov_order.hpp"

#include <algorithm>
#include <cmath>

#include "diknn/directed_information.hpp"
#include "diknn/kdtree.hpp"

namespace diknn {

namespace {

double predict_row(const KdTree& tree, const PointSet& predictors,
                   const std::vector<double>& responses,
                   const std::vector<std::size_t>& times, std::size_t row,
                   int k, int m, bool weighted) {
  const std::size_t t = times[row];
  const auto skip = [&](std::uint32_t j) {
    const std::size_t tj = times[j];
    const std::size_t lo = std::min(t, tj), hi = std::max(t, tj);
    return hi - lo <= static_cast<std::size_t>(m);  // windows overlap
  };
  std::vector<Neighbor> nb;
  try {
    nb = tree.knn(predictors.row(row), k, skip);
  } catch (const UsageError&) {
    throw InsufficientDataError(
        "knn_predict_next: fewer than k non-overlapping candidate rows");
  }
  if (!weighted) {
    double s = 0.0;
    for (const auto& n : nb) s += responses[n.index];
    return s / static_cast<double>(nb.size());
  }
  double num = 0.0, den = 0.0;
  for (const auto& n : nb) {
    const double w = 1.0 / (key_to_distance(n.key, tree.norm()) + 1e-12);
    num += w * responses[n.index];
    den += w;
  }
  return num / den;
}

struct PredictionSet {
  PointSet predictors;
  std::vector<double> responses;
  std::vector<std::size_t> times;
};

// Predictor tuples for order m over the common response range
// [first_time, N).  Layout per row: y_{i-m..i-1} then (joint only)
// x_{i-m..i-1}.
PredictionSet build_prediction_set(const SeriesPair& pair, int m,
                                   std::size_t first_time, bool include_x) {
  const std::size_t n = pair.size();
  const std::size_t um = static_cast<std::size_t>(m);
  const std::size_t d = include_x ? 2 * um : um;
  std::vector<double> data;
  data.reserve((n - first_time) * d);
  PredictionSet out;
  for (std::size_t i = first_time; i < n; ++i) {
    for (std::size_t j = i - um; j < i; ++j) data.push_back(pair.y[j]);
    if (include_x) {
      for (std::size_t j = i - um; j < i; ++j) data.push_back(pair.x[j]);
    }
    out.responses.push_back(pair.y[i]);
    out.times.push_back(i);
  }
  out.predictors = PointSet(d, std::move(data));
  return out;
}

double mean_prediction_loss(const SeriesPair& pair, int m,
                            std::size_t first_time, bool include_x, int k,
                            bool weighted) {
  const PredictionSet ps =
      build_prediction_set(pair, m, first_time, include_x);
  const KdTree tree(ps.predictors, Norm::Linf);
  double loss = 0.0;
  for (std::size_t r = 0; r < ps.responses.size(); ++r) {
    const double pred =
        predict_row(tree, ps.predictors, ps.responses, ps.times, r, k, m,
                    weighted);
    const double err = ps.responses[r] - pred;
    loss += err * err;
  }
  return loss / static_cast<double>(ps.responses.size());
}

}  // namespace

const char* to_string(OrderMethod m) {
  switch (m) {
    case OrderMethod::Joint:   return "joint";
    case OrderMethod::Ragwitz: return "ragwitz";
    case OrderMethod::Fixed:   return "fixed";
  }
  return "?";
}

double knn_predict_next(const EmbeddedDataset& ds, std::size_t row, int k,
                        bool include_x, bool weighted) {
  if (row >= ds.n_effective) throw UsageError("knn_predict_next: bad row");
  const PointSet predictors =
      ds.project(include_x ? Subspace::YPastXPast : Subspace::YPast);
  std::vector<double> responses(ds.n_effective);
  for (std::size_t r = 0; r < ds.n_effective; ++r) responses[r] = ds.response(r);
  const KdTree tree(predictors, Norm::Linf);
  return predict_row(tree, predictors, responses, ds.index_map, row, k, ds.m,
                     weighted);
}

OrderSelection estimate_order(const SeriesPair& pair,
                              std::span<const int> candidates, int k,
                              OrderMethod method, bool weighted) {
  if (candidates.empty()) {
    throw UsageError("estimate_order: empty candidate set");
  }
  if (method == OrderMethod::Fixed) {
    throw UsageError("estimate_order: method must be joint or ragwitz");
  }
  int max_m = 0;
  for (int m : candidates) {
    if (m < 1 || m > kMaxMarkovOrder) {
      throw UsageError("estimate_order: candidate orders must lie in [1, 20]");
    }
    max_m = std::max(max_m, m);
  }
  if (pair.x.size() != pair.y.size()) {
    throw UsageError("estimate_order: series lengths differ");
  }
  if (pair.size() <= static_cast<std::size_t>(max_m + k + 1)) {
    throw InsufficientDataError(
        "estimate_order: series too short for the largest candidate order");
  }
  const bool include_x = method == OrderMethod::Joint;
  // All candidates are scored on the rows admissible for the largest one,
  // so the losses are comparable.
  const std::size_t first_time = static_cast<std::size_t>(max_m);

  OrderSelection sel;
  sel.method = method;
  std::vector<int> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  for (int m : sorted) {
    sel.losses[m] =
        mean_prediction_loss(pair, m, first_time, include_x, k, weighted);
  }
  // Smallest order whose loss is within the near-tie margin of the best.
  // The empirical losses carry sampling noise of a few percent, so a strict
  // argmin over a statistically flat profile would pick an arbitrary
  // candidate; the margin resolves such ties toward parsimony.
  double min_loss = sel.losses[sorted.front()];
  for (int m : sorted) min_loss = std::min(min_loss, sel.losses[m]);
  const double threshold = min_loss * (1.0 + kOrderLossTieMargin);
  sel.m_hat = sorted.front();
  for (int m : sorted) {
    if (sel.losses[m] <= threshold) {
      sel.m_hat = m;
      break;
    }
  }
  return sel;
}

}  // namespace diknn
