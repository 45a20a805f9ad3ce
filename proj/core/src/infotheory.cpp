#include "l1lb/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "l1lb/error.hpp"

namespace l1lb {
namespace {

double plogp(double p) { return p <= kProbabilityDust ? 0.0 : -p * std::log2(p); }

// Clamps floating dust and checks the total mass.
void sanitize(std::vector<double>& weights) {
  if (weights.empty()) throw InvalidArgument("distribution over an empty alphabet");
  double total = 0.0;
  for (double& w : weights) {
    if (!std::isfinite(w) || w < -kProbabilityDust) {
      throw InvalidArgument("negative or non-finite probability weight");
    }
    w = std::max(w, 0.0);
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidArgument("probability weights sum to " + std::to_string(total));
  }
}

void check_coords(const JointDistribution& joint, std::span<const std::size_t> coords) {
  for (std::size_t c : coords) {
    if (c >= joint.coordinates()) {
      throw InvalidArgument("coordinate " + std::to_string(c) + " out of range");
    }
  }
}

void check_disjoint(std::initializer_list<std::span<const std::size_t>> sets) {
  std::vector<std::size_t> all;
  for (auto s : sets) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw InvalidArgument("coordinate sets must be disjoint");
  }
}

std::vector<std::size_t> join(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::size_t> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> weights) : weights_(std::move(weights)) {
  sanitize(weights_);
}

ProbVector ProbVector::uniform(std::size_t m) {
  if (m == 0) throw InvalidArgument("distribution over an empty alphabet");
  return ProbVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

ProbVector ProbVector::point_mass(std::size_t m, std::size_t at) {
  if (at >= m) throw InvalidArgument("point mass outside the alphabet");
  std::vector<double> w(m, 0.0);
  w[at] = 1.0;
  return ProbVector(std::move(w));
}

JointDistribution::JointDistribution(std::vector<std::size_t> alphabet_sizes,
                                     std::vector<double> table)
    : sizes_(std::move(alphabet_sizes)), table_(std::move(table)) {
  if (sizes_.empty()) throw InvalidArgument("joint distribution needs at least one coordinate");
  std::size_t cells = 1;
  for (std::size_t s : sizes_) {
    if (s == 0) throw InvalidArgument("empty alphabet in joint distribution");
    if (cells > kMaxJointCells / s) throw CapacityError("joint table exceeds 2^24 cells");
    cells *= s;
  }
  if (table_.size() != cells) {
    throw InvalidArgument("joint table has " + std::to_string(table_.size()) +
                          " cells, alphabets need " + std::to_string(cells));
  }
  sanitize(table_);
}

JointDistribution JointDistribution::product(std::span<const ProbVector> marginals) {
  std::vector<std::size_t> sizes;
  std::vector<double> table{1.0};
  for (const ProbVector& p : marginals) {
    sizes.push_back(p.size());
    std::vector<double> next;
    next.reserve(table.size() * p.size());
    for (double t : table) {
      for (double w : p.weights()) next.push_back(t * w);
    }
    table = std::move(next);
  }
  return JointDistribution(std::move(sizes), std::move(table));
}

double JointDistribution::at(std::span<const std::size_t> outcome) const {
  if (outcome.size() != sizes_.size()) throw InvalidArgument("outcome has the wrong arity");
  std::size_t index = 0;
  for (std::size_t c = 0; c < sizes_.size(); ++c) {
    if (outcome[c] >= sizes_[c]) throw InvalidArgument("outcome outside the alphabet");
    index = index * sizes_[c] + outcome[c];
  }
  return table_[index];
}

JointDistribution JointDistribution::marginal(std::span<const std::size_t> coords) const {
  check_coords(*this, coords);
  check_disjoint({coords});
  if (coords.empty()) throw InvalidArgument("marginal over no coordinates");

  // Stride of each source coordinate inside the target table (0 if summed out).
  std::vector<std::size_t> target_stride(sizes_.size(), 0);
  std::vector<std::size_t> target_sizes;
  std::size_t cells = 1;
  for (std::size_t i = coords.size(); i-- > 0;) {
    target_stride[coords[i]] = cells;
    cells *= sizes_[coords[i]];
  }
  for (std::size_t c : coords) target_sizes.push_back(sizes_[c]);

  std::vector<double> out(cells, 0.0);
  std::vector<std::size_t> digit(sizes_.size(), 0);
  std::size_t target = 0;
  for (double w : table_) {
    out[target] += w;
    // Odometer increment of the source multi-index, tracking the target offset.
    for (std::size_t c = sizes_.size(); c-- > 0;) {
      if (++digit[c] < sizes_[c]) {
        target += target_stride[c];
        break;
      }
      target -= target_stride[c] * (sizes_[c] - 1);
      digit[c] = 0;
    }
  }
  return JointDistribution(std::move(target_sizes), std::move(out));
}

double JointDistribution::entropy(std::span<const std::size_t> coords) const {
  if (coords.empty()) return 0.0;
  return l1lb::entropy(marginal(coords).table());
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("binary entropy argument outside [0, 1]");
  return plogp(x) + plogp(1.0 - x);
}

double entropy(std::span<const double> weights) {
  double h = 0.0;
  for (double w : weights) h += plogp(w);
  return h;
}

double entropy(const ProbVector& p) { return entropy(p.weights()); }

double conditional_entropy(const JointDistribution& joint, std::span<const std::size_t> a,
                           std::span<const std::size_t> z) {
  check_coords(joint, a);
  check_coords(joint, z);
  check_disjoint({a, z});
  return joint.entropy(join(a, z)) - joint.entropy(z);
}

double mutual_information(const JointDistribution& joint, std::span<const std::size_t> a,
                          std::span<const std::size_t> b, std::span<const std::size_t> z) {
  check_coords(joint, a);
  check_coords(joint, b);
  check_coords(joint, z);
  check_disjoint({a, b, z});
  if (a.empty() || b.empty()) throw InvalidArgument("mutual information needs non-empty sets");
  const std::vector<std::size_t> az = join(a, z);
  const std::vector<std::size_t> bz = join(b, z);
  const std::vector<std::size_t> abz = join(a, bz);
  return joint.entropy(az) + joint.entropy(bz) - joint.entropy(abz) - joint.entropy(z);
}

double mutual_information(const JointDistribution& joint, std::size_t i, std::size_t j) {
  const std::size_t a[] = {i};
  const std::size_t b[] = {j};
  return mutual_information(joint, a, b, {});
}

double conditional_mutual_information(const JointDistribution& joint, std::size_t i, std::size_t j,
                                      std::span<const std::size_t> z) {
  const std::size_t a[] = {i};
  const std::size_t b[] = {j};
  return mutual_information(joint, a, b, z);
}

double fano_bound(std::uint64_t k, double p) {
  if (k < 2) throw InvalidArgument("Fano bound needs k >= 2");
  if (!(p >= 0.5 && p <= 1.0)) throw InvalidArgument("Fano bound needs success probability in [1/2, 1]");
  const double kd = static_cast<double>(k);
  return std::log2(kd) - (1.0 - p) * std::log2(kd - 1.0) - binary_entropy(p);
}

std::vector<double> chain_rule_terms(const JointDistribution& joint) {
  if (joint.coordinates() < 2) throw InvalidArgument("chain rule needs (X_1..X_n, M) with n >= 1");
  const std::size_t n = joint.coordinates() - 1;
  const std::size_t m[] = {n};
  std::vector<std::size_t> before;
  std::vector<double> terms;
  terms.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t x[] = {l};
    terms.push_back(mutual_information(joint, x, m, before));
    before.push_back(l);
  }
  return terms;
}

}  // namespace l1lb
