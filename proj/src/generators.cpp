#include "diknn/generators.hpp"

#include <algorithm>
#include <cmath>

#include "diknn/errors.hpp"
#include "diknn/rng.hpp"

namespace diknn {

namespace {

// Sub-stream tags; initial conditions and noise come from distinct streams
// so the same trajectory can be replayed under a different noise gain.
constexpr std::uint64_t kStreamDriver = 1;
constexpr std::uint64_t kStreamNoise = 2;
constexpr std::uint64_t kStreamInit = 3;

void check_beta(double b, const char* name) {
  if (b < 0.0 || b > 1.0) {
    throw UsageError(std::string(name) + " must lie in [0, 1]");
  }
}

SeriesPair gen_polynomial(double beta1, double beta2, std::size_t n,
                          std::uint64_t seed, bool squared) {
  check_beta(beta1, "beta1");
  check_beta(beta2, "beta2");
  Rng xrng(derive_seed(seed, {kStreamDriver}));
  Rng zrng(derive_seed(seed, {kStreamNoise}));
  SeriesPair out;
  out.seed = seed;
  out.x.resize(n);
  out.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = xrng.gaussian();
  auto reg = [squared](double v) { return squared ? v * v : v; };
  for (std::size_t i = 0; i < n; ++i) {
    double v = zrng.gaussian();
    if (i >= 1) v += beta1 * reg(out.x[i - 1]);
    if (i >= 2) v += beta2 * reg(out.x[i - 2]);
    out.y[i] = v;
  }
  return out;
}

}  // namespace

GeneratorKind generator_kind_from_string(const std::string& s) {
  if (s == "linear") return GeneratorKind::Linear;
  if (s == "quadratic") return GeneratorKind::Quadratic;
  if (s == "henon") return GeneratorKind::Henon;
  if (s == "sigmoid") return GeneratorKind::Sigmoid;
  throw UsageError("unknown generator kind: " + s);
}

const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Linear:    return "linear";
    case GeneratorKind::Quadratic: return "quadratic";
    case GeneratorKind::Henon:     return "henon";
    case GeneratorKind::Sigmoid:   return "sigmoid";
  }
  return "?";
}

SeriesPair gen_linear(double beta1, double beta2, std::size_t n,
                      std::uint64_t seed) {
  return gen_polynomial(beta1, beta2, n, seed, /*squared=*/false);
}

SeriesPair gen_quadratic(double beta1, double beta2, std::size_t n,
                         std::uint64_t seed) {
  return gen_polynomial(beta1, beta2, n, seed, /*squared=*/true);
}

std::size_t henon_burn_in(std::size_t n) {
  const double scaled = 100000.0 * static_cast<double>(n) / 3000.0;
  return static_cast<std::size_t>(std::max(10000.0, std::round(scaled)));
}

SeriesPair gen_henon(double beta, double gamma, std::size_t n,
                     std::uint64_t seed) {
  check_beta(beta, "beta");
  if (gamma < 0.0) throw UsageError("gamma must be >= 0");
  if (n < 4) throw UsageError("henon: n too small");
  const std::size_t burn = henon_burn_in(n);
  const std::size_t total = burn + n;

  std::vector<double> xt, yt;
  bool ok = false;
  for (std::uint64_t attempt = 0; attempt < 100 && !ok; ++attempt) {
    Rng init(derive_seed(seed, {kStreamInit, attempt}));
    xt.assign(total, 0.0);
    yt.assign(total, 0.0);
    xt[0] = init.uniform();
    xt[1] = init.uniform();
    yt[0] = init.uniform();
    yt[1] = init.uniform();
    ok = true;
    for (std::size_t i = 2; i < total; ++i) {
      xt[i] = 1.4 - xt[i - 1] * xt[i - 1] + 0.3 * xt[i - 2];
      yt[i] = 1.4 - (beta * xt[i - 1] + (1.0 - beta) * yt[i - 1]) * yt[i - 1] +
              0.3 * yt[i - 2];
      if (std::abs(xt[i]) > 10.0 || std::abs(yt[i]) > 10.0) {
        ok = false;
        break;
      }
    }
  }
  if (!ok) {
    throw NumericalError("henon: trajectory diverged for 100 seeded starts");
  }

  Rng noise(derive_seed(seed, {kStreamNoise}));
  SeriesPair out;
  out.seed = seed;
  out.x.resize(n);
  out.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = burn + i;
    out.x[i] = xt[s] + gamma * noise.gaussian();
    out.y[i] = yt[s] + gamma * noise.gaussian();
  }
  return out;
}

SeriesPair gen_sigmoid(double beta, std::size_t n, std::uint64_t seed) {
  check_beta(beta, "beta");
  if (n < 2) throw UsageError("sigmoid: n too small");
  Rng init(derive_seed(seed, {kStreamInit}));
  Rng noise(derive_seed(seed, {kStreamNoise}));
  SeriesPair out;
  out.seed = seed;
  out.x.resize(n);
  out.y.resize(n);
  out.x[0] = init.uniform();
  out.y[0] = init.uniform();
  auto sigmoid = [](double t) { return 1.0 / (1.0 + std::exp(-t)); };
  // The cosine drive indexes the current (1-based) sample time.
  for (std::size_t i = 1; i < n; ++i) {
    const double xi = out.x[i - 1];
    const double yi = out.y[i - 1];
    const double t = static_cast<double>(i);  // 1-based index of sample i-1
    const double zx = noise.gaussian();
    const double zy = noise.gaussian();
    out.x[i] = 0.125 * xi + 25.0 * xi / (4.0 * (xi * xi + 1.0)) +
               2.0 * std::cos(1.2 * t) + zx;
    const double s = sigmoid(xi);
    out.y[i] = 0.1 * yi * yi - beta * (s * s - 0.3) + zy;
    if (std::abs(out.y[i]) > 1e6 || std::abs(out.x[i]) > 1e6) {
      throw NumericalError("sigmoid: dynamics left the bounded regime");
    }
  }
  return out;
}

SeriesPair generate(const GeneratorSpec& spec) {
  if (spec.n < 100) throw UsageError("generator: n must be >= 100");
  switch (spec.kind) {
    case GeneratorKind::Linear:
      return gen_linear(spec.beta1, spec.beta2, spec.n, spec.seed);
    case GeneratorKind::Quadratic:
      return gen_quadratic(spec.beta1, spec.beta2, spec.n, spec.seed);
    case GeneratorKind::Henon:
      return gen_henon(spec.beta, spec.gamma, spec.n, spec.seed);
    case GeneratorKind::Sigmoid:
      return gen_sigmoid(spec.beta, spec.n, spec.seed);
  }
  throw UsageError("unknown generator kind");
}

}  // namespace diknn
