#pragma once

#include <cstddef>

#include "diknn/point_set.hpp"

namespace diknn {

enum class MIMethod { ThreeKL, KSG, GOV };

struct MIEstimate {
  double value = 0.0;  // nats
  MIMethod method = MIMethod::KSG;
  int k = 0;
  std::size_t n_samples = 0;
};

// h_KL(X) + h_KL(Y) - h_KL(X,Y), each term with its own k-NN distances
// under l-infinity.
MIEstimate mi_3kl(const PointSet& x, const PointSet& y, int k);

// Kraskov-Stogbauer-Grassberger: psi(k) + log N
//   - (1/N) sum [psi(n_x + 1) + psi(n_y + 1)],
// counts strictly inside the joint l-infinity radius.
MIEstimate mi_ksg(const PointSet& x, const PointSet& y, int k);

// Gao-Oh-Viswanath: log N + psi(k) + log(c_dx c_dy / c_{dx+dy})
//   - (1/N) sum [log n_x + log n_y],
// counts inside the joint l2 radius.
MIEstimate mi_gov(const PointSet& x, const PointSet& y, int k);

}  // namespace diknn
