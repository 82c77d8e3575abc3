#include <doctest.h>

#include <cmath>

#include "diknn/entropy.hpp"
#include "diknn/special_functions.hpp"
#include "diknn/rng.hpp"
#include "oracles.hpp"

using namespace diknn;

namespace {

PointSet gaussian_set(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.gaussian();
  return PointSet(1, std::move(v));
}

PointSet uniform_set(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform();
  return PointSet(1, std::move(v));
}

}  // namespace

TEST_CASE("naive and KL estimators differ by exactly psi(k) - log k") {
  Rng rng(404);
  const PointSet pts = oracle::random_points(300, 2, rng);
  for (int k : {1, 4, 8}) {
    const double diff = entropy_naive(pts, k, Norm::L2).value -
                        entropy_kl(pts, k, Norm::L2).value;
    CHECK(diff == doctest::Approx(digamma(k) - std::log(k)).epsilon(1e-12));
  }
}

TEST_CASE("KL entropy of U[0,1] is near 0") {
  std::vector<double> est;
  for (std::uint64_t s = 0; s < 20; ++s) {
    est.push_back(entropy_kl(uniform_set(5000, 100 + s), 8, Norm::L2).value);
  }
  CHECK(std::abs(oracle::mean(est) - oracle::uniform_entropy_1d()) < 0.02);
}

TEST_CASE("KL entropy of a standard Gaussian is near half log(2 pi e)") {
  std::vector<double> est;
  for (std::uint64_t s = 0; s < 20; ++s) {
    est.push_back(entropy_kl(gaussian_set(5000, 200 + s), 8, Norm::L2).value);
  }
  CHECK(std::abs(oracle::mean(est) - oracle::gaussian_entropy_1d()) < 0.02);
}

TEST_CASE("naive estimator is more biased than KL on the Gaussian") {
  std::vector<double> kl, naive;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PointSet pts = gaussian_set(5000, 300 + s);
    kl.push_back(entropy_kl(pts, 8, Norm::L2).value);
    naive.push_back(entropy_naive(pts, 8, Norm::L2).value);
  }
  const double h = oracle::gaussian_entropy_1d();
  CHECK(std::abs(oracle::mean(naive) - h) > std::abs(oracle::mean(kl) - h));
}

TEST_CASE("entropy scaling law: h(aX) = h(X) + d log a") {
  const PointSet pts = gaussian_set(5000, 9);
  PointSet scaled = pts;
  const double a = 3.7;
  for (std::size_t i = 0; i < pts.size(); ++i) scaled.at(i, 0) *= a;
  const double h0 = entropy_kl(pts, 8, Norm::L2).value;
  const double h1 = entropy_kl(scaled, 8, Norm::L2).value;
  CHECK(std::abs(h1 - h0 - std::log(a)) < 0.02);
}

TEST_CASE("translation leaves the estimate unchanged") {
  const PointSet pts = gaussian_set(2000, 11);
  PointSet shifted = pts;
  for (std::size_t i = 0; i < pts.size(); ++i) shifted.at(i, 0) += 123.25;
  CHECK(entropy_kl(pts, 8, Norm::L2).value ==
        doctest::Approx(entropy_kl(shifted, 8, Norm::L2).value).epsilon(1e-10));
}

TEST_CASE("permutation of sample order leaves the estimate unchanged") {
  Rng rng(17);
  const PointSet pts = oracle::random_points(500, 2, rng);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rows.push_back({pts.at(i, 0), pts.at(i, 1)});
  }
  std::vector<std::size_t> perm(rows.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<std::vector<double>> shuffled;
  for (std::size_t i : perm) shuffled.push_back(rows[i]);
  CHECK(entropy_kl(pts, 5, Norm::Linf).value ==
        doctest::Approx(entropy_kl(PointSet::from_rows(shuffled), 5, Norm::Linf).value)
            .epsilon(1e-12));
}

TEST_CASE("insufficient samples raise") {
  const PointSet pts = gaussian_set(5, 1);
  CHECK_THROWS_AS(entropy_kl(pts, 8, Norm::L2), InsufficientDataError);
}
