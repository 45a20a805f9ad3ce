#include "l1lb/l1metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "l1lb/error.hpp"

namespace l1lb {
namespace {

void check_shape(const PointSet& points, const Embedding& emb) {
  if (emb.size() != points.size()) {
    throw InvalidArgument("embedding has " + std::to_string(emb.size()) + " vectors, point set has " +
                          std::to_string(points.size()));
  }
  if (points.size() < 2) throw InvalidArgument("distortion needs at least two points");
}

}  // namespace

Embedding::Embedding(std::size_t points, std::size_t d)
    : points_(points), d_(d), values_(points * d, 0.0) {
  if (d == 0) throw InvalidArgument("embedding dimension must be at least 1");
}

Embedding::Embedding(std::size_t points, std::size_t d, std::vector<double> values)
    : points_(points), d_(d), values_(std::move(values)) {
  if (d == 0) throw InvalidArgument("embedding dimension must be at least 1");
  if (values_.size() != points * d) throw InvalidArgument("embedding value count does not match N*d");
  if (!std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); })) {
    throw InvalidArgument("embedding contains a non-finite entry");
  }
}

Embedding Embedding::identity(const PointSet& points) {
  Embedding emb(points.size(), static_cast<std::size_t>(points.dimension()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = emb.row(i);
    for (const Interval& iv : points.label(i).ones()) {
      std::fill(row.begin() + static_cast<std::ptrdiff_t>(iv.begin),
                row.begin() + static_cast<std::ptrdiff_t>(iv.end), 1.0);
    }
  }
  return emb;
}

Embedding Embedding::scaled(double factor) const {
  std::vector<double> values = values_;
  for (double& x : values) x *= factor;
  return Embedding(points_, d_, std::move(values));
}

double l1_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("vector length mismatch: " + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(v[i])) throw InvalidArgument("non-finite vector entry");
    sum += std::abs(u[i] - v[i]);
  }
  return sum;
}

DistortionReport distortion(const PointSet& points, const Embedding& emb) {
  check_shape(points, emb);
  double max_ratio = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double original = static_cast<double>(points.distance(i, j));
      const double ratio = l1_distance(emb.row(i), emb.row(j)) / original;
      max_ratio = std::max(max_ratio, ratio);
      min_ratio = std::min(min_ratio, ratio);
    }
  }
  DistortionReport report;
  report.expansion = max_ratio;
  if (min_ratio == 0.0) {
    report.injective = false;
    report.contraction = std::numeric_limits<double>::infinity();
    report.distortion = std::numeric_limits<double>::infinity();
  } else {
    report.contraction = 1.0 / min_ratio;
    report.distortion = max_ratio / min_ratio;
  }
  return report;
}

Embedding normalize_lipschitz(const PointSet& points, const Embedding& emb) {
  const DistortionReport report = distortion(points, emb);
  if (report.expansion == 0.0) throw DegenerateEmbedding("constant embedding cannot be normalized");
  return emb.scaled(1.0 / report.expansion);
}

}  // namespace l1lb
