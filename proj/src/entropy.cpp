#include "diknn/entropy.hpp"

#include <cmath>

#include "diknn/neighbor_stats.hpp"
#include "diknn/special_functions.hpp"

namespace diknn {

namespace {

double mean_log_knn_distance(const PointSet& set, int k, Norm p) {
  const auto dist = knn_distance_jittered(set, k, p);
  double s = 0.0;
  for (double d : dist) {
    if (d <= 0.0) {
      throw NumericalError("entropy: zero k-NN distance survived jitter");
    }
    s += std::log(d);
  }
  return s / static_cast<double>(dist.size());
}

}  // namespace

EntropyEstimate entropy_kl(const PointSet& set, int k, Norm p) {
  const std::size_t n = set.size();
  if (n <= static_cast<std::size_t>(k) + 1) {
    throw InsufficientDataError("entropy: need more than k + 1 samples");
  }
  const double d = static_cast<double>(set.dim());
  const double value = std::log(static_cast<double>(n)) - digamma(k) +
                       log_unit_ball_volume(set.dim(), p) +
                       d * mean_log_knn_distance(set, k, p);
  return {value, n, k, p};
}

EntropyEstimate entropy_naive(const PointSet& set, int k, Norm p) {
  // Differs from the KL estimator by exactly psi(k) - log(k).
  EntropyEstimate e = entropy_kl(set, k, p);
  e.value += digamma(k) - std::log(static_cast<double>(k));
  return e;
}

}  // namespace diknn
