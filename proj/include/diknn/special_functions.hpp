#pragma once

namespace diknn {

// Digamma psi(x) for x > 0, accurate to 1e-12 absolute for x >= 1.
// Upward recurrence to x >= 10, then the asymptotic Bernoulli series.
double digamma(double x);

}  // namespace diknn
