#include "diknn/significance.hpp"

#include <cmath>

namespace diknn {

std::vector<double> shuffle_surrogate(std::span<const double> x, Rng& rng) {
  if (x.size() < 2) throw UsageError("shuffle_surrogate: need length >= 2");
  std::vector<double> out(x.begin(), x.end());
  rng.shuffle(out);
  return out;
}

namespace {

std::vector<double> make_surrogate(std::span<const double> x, Rng& rng,
                                   SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::Permutation:
      return shuffle_surrogate(x, rng);
    case SurrogateKind::CircularShift: {
      const std::size_t n = x.size();
      const std::size_t shift = 1 + rng.below(n - 1);
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = x[(i + shift) % n];
      return out;
    }
    case SurrogateKind::Resample: {
      std::vector<double> out(x.size());
      for (auto& v : out) v = x[rng.below(x.size())];
      return out;
    }
  }
  throw UsageError("unknown surrogate kind");
}

}  // namespace

SignificanceReport significance_test(const SeriesPair& pair, DIMethod method,
                                     Direction direction, int m, int k, int L,
                                     double epsilon_p, std::uint64_t base_seed,
                                     SurrogateKind kind) {
  if (!(epsilon_p > 0.0 && epsilon_p < 1.0)) {
    throw UsageError("significance_test: epsilon_p must lie in (0, 1)");
  }
  const int min_l =
      static_cast<int>(std::ceil(1.0 / epsilon_p)) - 1;
  if (L < min_l) {
    throw UsageError("significance_test: L too small for requested epsilon_p");
  }

  SignificanceReport rep;
  rep.epsilon_p = epsilon_p;
  rep.estimate = estimate_di(pair, method, direction, m, k);
  rep.observed = rep.estimate.value;

  // The surrogate shuffles the source of the tested direction; the target
  // sequence stays fixed.
  const SeriesPair oriented =
      direction == Direction::XtoY ? pair : pair.reversed();
  rep.surrogates.reserve(static_cast<std::size_t>(L));
  std::size_t n_ge = 0;
  for (int l = 0; l < L; ++l) {
    Rng rng(derive_seed(base_seed, {0x5A11u, static_cast<std::uint64_t>(l)}));
    SeriesPair surrogate = oriented;
    surrogate.x = make_surrogate(oriented.x, rng, kind);
    const DIEstimate e =
        method == DIMethod::KSG ? di_ksg(surrogate, m, k) : di_gov(surrogate, m, k);
    rep.surrogates.push_back(e.value);
    if (e.value >= rep.observed) ++n_ge;
  }
  rep.p_value = static_cast<double>(1 + n_ge) / static_cast<double>(L + 1);
  rep.significant = rep.p_value <= epsilon_p;
  rep.zeroed_value = rep.significant ? rep.observed : 0.0;
  return rep;
}

}  // namespace diknn
