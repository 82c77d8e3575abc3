#include "diknn/special_functions.hpp"

#include <cmath>

#include "diknn/errors.hpp"

namespace diknn {

double digamma(double x) {
  if (!(x > 0.0)) throw UsageError("digamma: argument must be positive");
  double result = 0.0;
  // psi(x) = psi(x + 1) - 1/x, applied until the asymptotic series is safe.
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n}).
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  series += inv2 * (1.0 / 12.0);
  series -= inv2 * inv2 * (1.0 / 120.0);
  series += inv2 * inv2 * inv2 * (1.0 / 252.0);
  series -= inv2 * inv2 * inv2 * inv2 * (1.0 / 240.0);
  series += inv2 * inv2 * inv2 * inv2 * inv2 * (1.0 / 132.0);
  series -= inv2 * inv2 * inv2 * inv2 * inv2 * inv2 * (691.0 / 32760.0);
  result += std::log(x) - 0.5 * inv - series;
  return result;
}

}  // namespace diknn
