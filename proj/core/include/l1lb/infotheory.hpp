#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace l1lb {

/// Weights below this are treated as exact zeros before taking logarithms.
inline constexpr double kProbabilityDust = 1e-12;

/// Tolerance on the total mass of a distribution.
inline constexpr double kMassTolerance = 1e-9;

/// Largest dense joint table, in cells.
inline constexpr std::size_t kMaxJointCells = std::size_t{1} << 24;

/// A probability distribution over the finite alphabet {0, ..., m-1}.
class ProbVector {
 public:
  /// Entries in [-1e-12, 0) are clamped to zero; anything more negative, or a
  /// total mass off by more than 1e-9, throws InvalidArgument.
  explicit ProbVector(std::vector<double> weights);

  static ProbVector uniform(std::size_t m);
  static ProbVector point_mass(std::size_t m, std::size_t at);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// A dense probability table over a product alphabet. Coordinate 0 is the
/// slowest-varying index of the row-major table.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::size_t> alphabet_sizes, std::vector<double> table);

  /// Product of independent marginals.
  static JointDistribution product(std::span<const ProbVector> marginals);

  std::size_t coordinates() const { return sizes_.size(); }
  const std::vector<std::size_t>& alphabet_sizes() const { return sizes_; }
  const std::vector<double>& table() const { return table_; }

  double at(std::span<const std::size_t> outcome) const;

  /// Joint law of the listed coordinates, in the listed order.
  JointDistribution marginal(std::span<const std::size_t> coords) const;

  /// H of the listed coordinates taken jointly; the empty set has entropy 0.
  double entropy(std::span<const std::size_t> coords) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<double> table_;
};

/// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0. Throws outside [0, 1].
double binary_entropy(double x);

/// Shannon entropy in bits.
double entropy(const ProbVector& p);
double entropy(std::span<const double> weights);

/// H(A | Z) for coordinate sets A and Z.
double conditional_entropy(const JointDistribution& joint, std::span<const std::size_t> a,
                           std::span<const std::size_t> z);

/// I(X_i : X_j).
double mutual_information(const JointDistribution& joint, std::size_t i, std::size_t j);

/// I(A : B | Z) = H(AZ) + H(BZ) - H(ABZ) - H(Z) for disjoint coordinate sets.
double mutual_information(const JointDistribution& joint, std::span<const std::size_t> a,
                          std::span<const std::size_t> b, std::span<const std::size_t> z = {});

/// I(X_i : X_j | Z).
double conditional_mutual_information(const JointDistribution& joint, std::size_t i, std::size_t j,
                                      std::span<const std::size_t> z);

/// Lower bound on I(X:Y) for X uniform on [k] predicted from Y with success
/// probability p: log2 k - (1-p) log2(k-1) - H(p). Requires p in [1/2, 1].
double fano_bound(std::uint64_t k, double p);

/// For a joint over (X_1, ..., X_n, M), the chain-rule terms
/// I(X_1 : M), I(X_2 : M | X_1), ..., I(X_n : M | X_1..X_{n-1}).
std::vector<double> chain_rule_terms(const JointDistribution& joint);

}  // namespace l1lb
