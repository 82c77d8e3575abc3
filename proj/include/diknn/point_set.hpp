#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diknn/errors.hpp"

namespace diknn {

enum class Norm { L2, Linf };

// Dense row-major collection of d-dimensional points.  All coordinates are
// required to be finite.
class PointSet {
 public:
  PointSet() = default;

  PointSet(std::size_t dim, std::vector<double> data);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);
  static PointSet from_column(std::span<const double> values);

  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return data_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  const double* row_ptr(std::size_t i) const { return data_.data() + i * dim_; }

  double at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  double& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }

  // Columns [first, first + count) as a new point set.
  PointSet slice_columns(std::size_t first, std::size_t count) const;

  // Horizontal concatenation; both sets must have the same row count.
  PointSet concat_columns(const PointSet& other) const;

  // Per-column sample standard deviation (used to scale degeneracy jitter).
  std::vector<double> column_stddev() const;

  const std::vector<double>& data() const { return data_; }

 private:
  std::vector<double> data_;
  std::size_t dim_ = 0;
};

// lp distance between two vectors of equal dimension; p is 2 or infinity.
double lp_distance(std::span<const double> a, std::span<const double> b, Norm p);

// Volume of the unit lp-ball in d dimensions:
//   c_{d,p} = 2^d Gamma(1 + 1/p)^d / Gamma(1 + d/p),  c_{d,inf} = 2^d.
double unit_ball_volume(std::size_t d, Norm p);
double log_unit_ball_volume(std::size_t d, Norm p);

}  // namespace diknn
