#include "diknn/directed_information.hpp"

#include <cmath>

#include "diknn/neighbor_stats.hpp"
#include "diknn/special_functions.hpp"

namespace diknn {

namespace {

inline double safe_count(std::uint32_t n) { return n == 0 ? 1.0 : n; }

void standardize(std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  const double scale = sd > 0.0 ? 1.0 / sd : 1.0;
  for (double& x : v) x = (x - mean) * scale;
}

struct Prepared {
  JointNeighborStats stats;  // counts: [Y^-], [Y^-,Y], [Y^-,X^-]
  std::size_t n_effective = 0;
  int m = 0;
};

Prepared prepare(const SeriesPair& pair, int m, int k, Norm p) {
  if (m < 1 || m > kMaxMarkovOrder) {
    throw UsageError("DI: Markov order must lie in [1, 20]");
  }
  if (k <= 0) throw UsageError("DI: k must be positive");
  if (pair.size() <= static_cast<std::size_t>(m + k + 1)) {
    throw InsufficientDataError("DI: need more than m + k + 1 samples");
  }
  // Per-series standardization: the joint ball treats every embedded
  // coordinate equally, so series on different scales would otherwise skew
  // the neighborhoods.  This also makes the estimate exactly invariant
  // under affine maps of either series.
  SeriesPair scaled = pair;
  standardize(scaled.x);
  standardize(scaled.y);
  EmbeddedDataset ds = embed(scaled, m);
  const std::size_t um = static_cast<std::size_t>(m);
  const ColumnRange ranges[] = {
      {um, um},       // Y^-
      {um, um + 1},   // (Y^-, Y)
      {0, 2 * um},    // (Y^-, X^-)
  };
  Prepared prep;
  // Strict (<) marginal counting: with the l-infinity norm the k-th joint
  // neighbor lies exactly on the boundary of its realizing block, and
  // counting it in would shift every estimate by O(1/n) per row.  Strict
  // counting keeps the null centered at zero; for l2 the two conventions
  // coincide almost surely.
  prep.stats = joint_neighbor_stats(ds.joint, k, p, ranges,
                                    Strictness::Exclusive);
  prep.n_effective = ds.n_effective;
  prep.m = m;
  return prep;
}

// Per-term entropy estimates sharing the joint radius.  `use_psi` selects
// the digamma count correction (KSG route) over the plain log (GOV route).
EntropyTerms entropy_terms(const Prepared& prep, int k, Norm p, bool use_psi) {
  const std::size_t n = prep.n_effective;
  const double logn = std::log(static_cast<double>(n));
  const std::size_t m = static_cast<std::size_t>(prep.m);
  const double log_c_ypast = log_unit_ball_volume(m, p);
  const double log_c_ypast_y = log_unit_ball_volume(m + 1, p);
  const double log_c_yx = log_unit_ball_volume(2 * m, p);
  const double log_c_joint = log_unit_ball_volume(2 * m + 1, p);

  auto correction = [&](std::uint32_t count) {
    const double c = safe_count(count);
    return use_psi ? digamma(c + 1.0) : std::log(c);
  };

  EntropyTerms t;
  for (std::size_t i = 0; i < n; ++i) {
    const double lr = prep.stats.log_rho[i];
    t.h_ypast += logn + log_c_ypast + static_cast<double>(m) * lr -
                 correction(prep.stats.counts[0][i]);
    t.h_ypast_y += logn + log_c_ypast_y + static_cast<double>(m + 1) * lr -
                   correction(prep.stats.counts[1][i]);
    t.h_ypast_xpast += logn + log_c_yx + static_cast<double>(2 * m) * lr -
                       correction(prep.stats.counts[2][i]);
    t.h_joint += logn + log_c_joint + static_cast<double>(2 * m + 1) * lr -
                 digamma(k);
  }
  const double inv = 1.0 / static_cast<double>(n);
  t.h_ypast *= inv;
  t.h_ypast_y *= inv;
  t.h_ypast_xpast *= inv;
  t.h_joint *= inv;
  return t;
}

}  // namespace

const char* to_string(DIMethod m) { return m == DIMethod::KSG ? "KSG" : "GOV"; }

const char* to_string(Direction d) {
  return d == Direction::XtoY ? "X->Y" : "Y->X";
}

DIEstimate di_ksg(const SeriesPair& pair, int m, int k) {
  const Prepared prep = prepare(pair, m, k, Norm::Linf);
  const std::size_t n = prep.n_effective;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += digamma(safe_count(prep.stats.counts[0][i]) + 1.0) -
           digamma(safe_count(prep.stats.counts[1][i]) + 1.0) -
           digamma(safe_count(prep.stats.counts[2][i]) + 1.0);
  }
  DIEstimate e;
  e.method = DIMethod::KSG;
  e.m = m;
  e.k = k;
  e.n_effective = n;
  e.terms = entropy_terms(prep, k, Norm::Linf, /*use_psi=*/true);
  e.combined_form = digamma(k) + acc / static_cast<double>(n);
  e.value = e.combined_form;
  return e;
}

DIEstimate di_gov(const SeriesPair& pair, int m, int k) {
  const Prepared prep = prepare(pair, m, k, Norm::L2);
  const std::size_t n = prep.n_effective;
  const std::size_t um = static_cast<std::size_t>(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::log(safe_count(prep.stats.counts[0][i])) -
           std::log(safe_count(prep.stats.counts[1][i])) -
           std::log(safe_count(prep.stats.counts[2][i]));
  }
  // Constant derived from the four per-term estimators; note c_{m,2} in the
  // denominator (it reduces to c_{1,2} only at m = 1).
  const double constant = log_unit_ball_volume(um + 1, Norm::L2) +
                          log_unit_ball_volume(2 * um, Norm::L2) -
                          log_unit_ball_volume(2 * um + 1, Norm::L2) -
                          log_unit_ball_volume(um, Norm::L2);
  DIEstimate e;
  e.method = DIMethod::GOV;
  e.m = m;
  e.k = k;
  e.n_effective = n;
  e.terms = entropy_terms(prep, k, Norm::L2, /*use_psi=*/false);
  e.combined_form = digamma(k) + constant + acc / static_cast<double>(n);
  e.value = e.terms.combination();
  return e;
}

DIEstimate estimate_di(const SeriesPair& pair, DIMethod method,
                       Direction direction, int m, int k) {
  const SeriesPair oriented =
      direction == Direction::XtoY ? pair : pair.reversed();
  DIEstimate e = method == DIMethod::KSG ? di_ksg(oriented, m, k)
                                         : di_gov(oriented, m, k);
  e.direction = direction;
  return e;
}

double di_rate_linear_theory(double beta1, double beta2) {
  const double b1 = std::abs(beta1), b2 = std::abs(beta2);
  if (b1 == 0.0 && b2 == 0.0) return 0.0;
  if (b1 == 0.0 || b2 == 0.0) {
    const double b = std::max(b1, b2);
    return 0.5 * std::log2(1.0 + b * b);
  }
  const double prod = b1 * b2;
  const double arg = (b1 * b1 + b2 * b2 + 1.0) / (2.0 * prod);
  return 0.5 * kNatsToBits * (std::log(prod) + std::acosh(arg));
}

}  // namespace diknn
