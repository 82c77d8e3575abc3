#include "diknn/point_set.hpp"

#include <algorithm>
#include <cmath>

namespace diknn {

namespace {

void check_finite(const std::vector<double>& data) {
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw UsageError("point set contains a non-finite coordinate");
    }
  }
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<double> data)
    : data_(std::move(data)), dim_(dim) {
  if (dim_ == 0) throw UsageError("point dimension must be positive");
  if (data_.size() % dim_ != 0) {
    throw UsageError("point data size is not a multiple of the dimension");
  }
  check_finite(data_);
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw UsageError("cannot build a point set from zero rows");
  const std::size_t d = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) {
      throw UsageError("all points must share the same dimension");
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return PointSet(d, std::move(data));
}

PointSet PointSet::from_column(std::span<const double> values) {
  return PointSet(1, std::vector<double>(values.begin(), values.end()));
}

PointSet PointSet::slice_columns(std::size_t first, std::size_t count) const {
  if (first + count > dim_ || count == 0) {
    throw UsageError("column slice out of range");
  }
  const std::size_t n = size();
  std::vector<double> out;
  out.reserve(n * count);
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = row_ptr(i) + first;
    out.insert(out.end(), p, p + count);
  }
  return PointSet(count, std::move(out));
}

PointSet PointSet::concat_columns(const PointSet& other) const {
  if (size() != other.size()) {
    throw UsageError("column concatenation requires equal row counts");
  }
  const std::size_t n = size();
  const std::size_t d = dim_ + other.dim_;
  std::vector<double> out;
  out.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    out.insert(out.end(), row_ptr(i), row_ptr(i) + dim_);
    out.insert(out.end(), other.row_ptr(i), other.row_ptr(i) + other.dim_);
  }
  return PointSet(d, std::move(out));
}

std::vector<double> PointSet::column_stddev() const {
  const std::size_t n = size();
  std::vector<double> mean(dim_, 0.0), m2(dim_, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) mean[j] += at(i, j);
  }
  for (std::size_t j = 0; j < dim_; ++j) mean[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const double dlt = at(i, j) - mean[j];
      m2[j] += dlt * dlt;
    }
  }
  std::vector<double> sd(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    sd[j] = n > 1 ? std::sqrt(m2[j] / static_cast<double>(n - 1)) : 0.0;
  }
  return sd;
}

double lp_distance(std::span<const double> a, std::span<const double> b,
                   Norm p) {
  if (a.size() != b.size()) {
    throw UsageError("lp_distance: dimension mismatch");
  }
  if (p == Norm::Linf) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double log_unit_ball_volume(std::size_t d, Norm p) {
  const double dd = static_cast<double>(d);
  if (p == Norm::Linf) return dd * std::log(2.0);
  // p = 2: Gamma(1 + 1/2) = sqrt(pi)/2.
  return dd * std::log(2.0) + dd * std::lgamma(1.5) - std::lgamma(1.0 + dd / 2.0);
}

double unit_ball_volume(std::size_t d, Norm p) {
  return std::exp(log_unit_ball_volume(d, p));
}

}  // namespace diknn
