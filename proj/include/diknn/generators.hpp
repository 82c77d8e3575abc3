#pragma once

#include <cstdint>
#include <string>

#include "diknn/embedding.hpp"

namespace diknn {

enum class GeneratorKind { Linear, Quadratic, Henon, Sigmoid };

GeneratorKind generator_kind_from_string(const std::string& s);
const char* to_string(GeneratorKind k);

// Parameters for the four synthetic benchmark interactions.  linear and
// quadratic use {beta1, beta2}; henon uses {beta, gamma}; sigmoid uses
// {beta}.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Linear;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t n = 3000;
  std::uint64_t seed = 0;
};

// y_i = b1 x_{i-1} + b2 x_{i-2} + z_i with x, z i.i.d. standard Gaussian;
// x history is zero-padded for the first two samples.
SeriesPair gen_linear(double beta1, double beta2, std::size_t n,
                      std::uint64_t seed);

// Same with squared regressors: y_i = b1 x_{i-1}^2 + b2 x_{i-2}^2 + z_i.
SeriesPair gen_quadratic(double beta1, double beta2, std::size_t n,
                         std::uint64_t seed);

// Unidirectionally coupled Henon maps iterated past a long burn-in, with
// additive gamma-scaled Gaussian observation noise on the kept window.
SeriesPair gen_henon(double beta, double gamma, std::size_t n,
                     std::uint64_t seed);

// X drives Y through a squared sigmoid; X follows a forced nonlinear
// recursion with a cosine drive on the absolute (1-based) time index.
SeriesPair gen_sigmoid(double beta, std::size_t n, std::uint64_t seed);

SeriesPair generate(const GeneratorSpec& spec);

// Burn-in used by gen_henon: 1e5 at n = 3000, scaled proportionally with a
// floor of 1e4.
std::size_t henon_burn_in(std::size_t n);

}  // namespace diknn
