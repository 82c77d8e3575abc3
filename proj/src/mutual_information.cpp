#include "diknn/mutual_information.hpp"

#include <cmath>

#include "diknn/entropy.hpp"
#include "diknn/neighbor_stats.hpp"
#include "diknn/special_functions.hpp"

namespace diknn {

namespace {

void check_paired(const PointSet& x, const PointSet& y, int k) {
  if (x.size() != y.size()) throw UsageError("MI: sample counts differ");
  if (k <= 0) throw UsageError("MI: k must be positive");
  if (x.size() <= static_cast<std::size_t>(k) + 1) {
    throw InsufficientDataError("MI: need more than k + 1 sample pairs");
  }
}

// Zero counts can only appear under exclusive strictness on tied data;
// mapped to 1 so psi/log stay finite.
inline double safe_count(std::uint32_t n) { return n == 0 ? 1.0 : n; }

}  // namespace

MIEstimate mi_3kl(const PointSet& x, const PointSet& y, int k) {
  check_paired(x, y, k);
  const PointSet joint = x.concat_columns(y);
  const double value = entropy_kl(x, k, Norm::Linf).value +
                       entropy_kl(y, k, Norm::Linf).value -
                       entropy_kl(joint, k, Norm::Linf).value;
  return {value, MIMethod::ThreeKL, k, x.size()};
}

MIEstimate mi_ksg(const PointSet& x, const PointSet& y, int k) {
  check_paired(x, y, k);
  const PointSet joint = x.concat_columns(y);
  const ColumnRange ranges[] = {{0, x.dim()}, {x.dim(), y.dim()}};
  // Strict (<) counting: the k-th joint neighbor sits on the boundary of
  // whichever marginal realizes the l-infinity distance and is not counted.
  const auto stats = joint_neighbor_stats(joint, k, Norm::Linf, ranges,
                                          Strictness::Exclusive);
  const std::size_t n = joint.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += digamma(safe_count(stats.counts[0][i]) + 1.0) +
           digamma(safe_count(stats.counts[1][i]) + 1.0);
  }
  const double value = digamma(k) + std::log(static_cast<double>(n)) -
                       acc / static_cast<double>(n);
  return {value, MIMethod::KSG, k, n};
}

MIEstimate mi_gov(const PointSet& x, const PointSet& y, int k) {
  check_paired(x, y, k);
  const PointSet joint = x.concat_columns(y);
  const ColumnRange ranges[] = {{0, x.dim()}, {x.dim(), y.dim()}};
  const auto stats = joint_neighbor_stats(joint, k, Norm::L2, ranges);
  const std::size_t n = joint.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::log(safe_count(stats.counts[0][i])) +
           std::log(safe_count(stats.counts[1][i]));
  }
  const double correction = log_unit_ball_volume(x.dim(), Norm::L2) +
                            log_unit_ball_volume(y.dim(), Norm::L2) -
                            log_unit_ball_volume(joint.dim(), Norm::L2);
  const double value = std::log(static_cast<double>(n)) + digamma(k) +
                       correction - acc / static_cast<double>(n);
  return {value, MIMethod::GOV, k, n};
}

}  // namespace diknn
