#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "l1lb/pointset.hpp"

namespace l1lb {

/// Vectors in R^d for every point of a PointSet, stored row-major in the
/// point set's export order.
class Embedding {
 public:
  Embedding() = default;

  /// Zero-initialised embedding of `points` points into R^d.
  Embedding(std::size_t points, std::size_t d);

  /// Throws InvalidArgument if the size does not match or an entry is not finite.
  Embedding(std::size_t points, std::size_t d, std::vector<double> values);

  /// The labels themselves as vectors in R^{k^n}.
  static Embedding identity(const PointSet& points);

  std::size_t dimension() const { return d_; }
  std::size_t size() const { return points_; }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * d_, d_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * d_, d_}; }
  const std::vector<double>& values() const { return values_; }

  Embedding scaled(double factor) const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::size_t points_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
};

/// Worst-case expansion and contraction over all pairs.
///
/// `distortion` is the scale-free product expansion * contraction. When two
/// distinct points land on the same vector, `injective` is false and
/// contraction and distortion are +infinity.
struct DistortionReport {
  double expansion = 0.0;
  double contraction = 0.0;
  double distortion = 0.0;
  bool injective = true;
};

/// sum_i |u_i - v_i|. Throws InvalidArgument on length mismatch or non-finite input.
double l1_distance(std::span<const double> u, std::span<const double> v);

/// Throws InvalidArgument unless the embedding covers exactly the point set
/// and the point set has at least two points.
DistortionReport distortion(const PointSet& points, const Embedding& emb);

/// Scales the embedding by 1/expansion so that it is 1-Lipschitz.
/// Throws DegenerateEmbedding for a constant embedding.
Embedding normalize_lipschitz(const PointSet& points, const Embedding& emb);

}  // namespace l1lb
