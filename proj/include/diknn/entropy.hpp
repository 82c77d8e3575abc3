#pragma once

#include <cstddef>

#include "diknn/point_set.hpp"

namespace diknn {

// Differential entropy estimate in nats.
struct EntropyEstimate {
  double value = 0.0;
  std::size_t n_samples = 0;
  int k = 0;
  Norm p = Norm::Linf;
};

// Re-substitution estimator with a uniform local-density assumption:
//   (1/N) sum log(N c_{d,p} rho_{k,i,p}^d / k).
EntropyEstimate entropy_naive(const PointSet& set, int k, Norm p);

// Kozachenko-Leonenko bias-corrected estimator:
//   log N - psi(k) + log c_{d,p} + (d/N) sum log rho_{k,i,p}.
EntropyEstimate entropy_kl(const PointSet& set, int k, Norm p);

}  // namespace diknn
