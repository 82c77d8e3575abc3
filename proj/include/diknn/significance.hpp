#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "diknn/directed_information.hpp"
#include "diknn/rng.hpp"

namespace diknn {

enum class SurrogateKind { Permutation, CircularShift, Resample };

struct SignificanceReport {
  double observed = 0.0;  // nats
  std::vector<double> surrogates;
  double p_value = 1.0;
  double epsilon_p = 0.05;
  bool significant = false;
  double zeroed_value = 0.0;  // observed if significant, else 0
  DIEstimate estimate;        // full estimate on the original pair
};

// Uniformly random permutation of x drawn from the given stream.
std::vector<double> shuffle_surrogate(std::span<const double> x, Rng& rng);

// Shuffle-surrogate test of the X->Y (or Y->X) DI estimate: the source
// sequence is shuffled L times, DI is re-estimated per surrogate with the
// same (m, k), and the add-one p-value
//   p = (1 + #{surrogate >= observed}) / (L + 1)
// decides significance at level epsilon_p.  The target sequence is never
// modified.
SignificanceReport significance_test(const SeriesPair& pair, DIMethod method,
                                     Direction direction, int m, int k, int L,
                                     double epsilon_p, std::uint64_t base_seed,
                                     SurrogateKind kind = SurrogateKind::Permutation);

}  // namespace diknn
