#include "l1lb/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "l1lb/error.hpp"

namespace l1lb {
namespace {

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

void check_shape(const PointSet& points, const Embedding& emb) {
  if (emb.size() != points.size()) {
    throw InvalidArgument("embedding does not cover the point set");
  }
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Averages avg(prefix, b) for b = 1..2k, each of length d.
std::vector<std::vector<double>> cycle_averages(const PointSet& points, const Embedding& emb,
                                                std::span<const std::uint64_t> prefix) {
  const std::uint64_t k = points.params().k;
  std::vector<std::uint64_t> child(prefix.begin(), prefix.end());
  child.push_back(0);
  std::vector<std::vector<double>> out;
  out.reserve(2 * k);
  for (std::uint64_t b = 1; b <= 2 * k; ++b) {
    child.back() = b;
    out.push_back(average_edge_vector(points, emb, child));
  }
  return out;
}

double separation(const std::vector<std::vector<double>>& avg, std::uint64_t k, std::uint64_t r,
                  std::size_t d) {
  std::vector<double> acc(d, 0.0);
  for (std::uint64_t b = 1; b <= k; ++b) {
    const double sign = b <= r ? 1.0 : -1.0;
    for (std::size_t j = 0; j < d; ++j) acc[j] += sign * (avg[b - 1][j] + avg[b + k - 1][j]);
  }
  return norm1(acc) / (2.0 * static_cast<double>(k));
}

void check_r(std::uint64_t k, std::uint64_t r) {
  if (r < 1 || r + 1 > k) throw InvalidArgument("r must lie in [1, k-1], got " + std::to_string(r));
}

}  // namespace

EdgeVectorMap edge_difference_map(const PointSet& points, const Embedding& emb) {
  check_shape(points, emb);
  const RecursiveCycleGraph& g = points.graph();
  EdgeVectorMap f{g.params(), emb.dimension(), {}};
  f.table.reserve(static_cast<std::size_t>(g.edge_count()) * f.d);
  g.for_each_edge([&](const EdgeLabel&, const OrientedEdge& e) {
    const auto head = emb.row(points.index_of(e.head));
    const auto tail = emb.row(points.index_of(e.tail));
    double norm = 0.0;
    for (std::size_t j = 0; j < f.d; ++j) {
      f.table.push_back(head[j] - tail[j]);
      norm += std::abs(head[j] - tail[j]);
    }
    if (norm > 1.0 + kLipschitzSlack) {
      throw InvalidArgument("edge vector has l1 norm " + std::to_string(norm) +
                            " > 1; normalize the embedding to be 1-Lipschitz first");
    }
  });
  return f;
}

std::vector<double> average_edge_vector(const PointSet& points, const Embedding& emb,
                                        std::span<const std::uint64_t> prefix) {
  check_shape(points, emb);
  const RecursiveCycleGraph& g = points.graph();
  const OrientedEdge e = g.edge_endpoints(prefix);
  const auto head = emb.row(points.index_of(e.head));
  const auto tail = emb.row(points.index_of(e.tail));
  const double scale = static_cast<double>(ipow(g.k(), g.n() - prefix.size()));
  std::vector<double> out(emb.dimension());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (head[j] - tail[j]) / scale;
  return out;
}

double constraint_lhs(const PointSet& points, const Embedding& emb,
                      std::span<const std::uint64_t> prefix, std::uint64_t r) {
  const std::uint64_t k = points.params().k;
  check_r(k, r);
  if (prefix.size() + 1 > points.params().n) {
    throw InvalidArgument("constraint prefix must have length at most n-1");
  }
  return separation(cycle_averages(points, emb, prefix), k, r, emb.dimension());
}

ConstraintReport constraint_report(const PointSet& points, const Embedding& emb) {
  check_shape(points, emb);
  const GraphParams& p = points.params();
  ConstraintReport report;
  report.min_lhs = std::numeric_limits<double>::infinity();
  for (std::uint64_t level = 1; level <= p.n; ++level) {
    const std::uint64_t prefixes = ipow(2 * p.k, level - 1);
    if (report.entries.size() + prefixes * (p.k - 1) > kMaxMaterialized) {
      throw CapacityError("too many constraint triples to evaluate");
    }
    std::vector<std::uint64_t> prefix(level - 1, 1);
    for (std::uint64_t i = 0; i < prefixes; ++i) {
      const auto avg = cycle_averages(points, emb, prefix);
      for (std::uint64_t r = 1; r < p.k; ++r) {
        const double lhs = separation(avg, p.k, r, emb.dimension());
        report.entries.push_back({level, prefix, r, lhs});
        report.min_lhs = std::min(report.min_lhs, lhs);
      }
      // Next prefix in lexicographic order.
      for (std::size_t c = prefix.size(); c-- > 0;) {
        if (++prefix[c] <= 2 * p.k) break;
        prefix[c] = 1;
      }
    }
  }
  double eps = std::clamp(1.0 - report.min_lhs, 0.0, 1.0);
  if (eps < kEpsilonSnap) eps = 0.0;
  report.epsilon = eps;
  return report;
}

ProbVector nonneg_lift(std::span<const double> v) {
  double norm = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite entry in lifted vector");
    norm += std::abs(x);
  }
  if (norm > 1.0 + kLipschitzSlack) {
    throw InvalidArgument("cannot lift a vector with l1 norm " + std::to_string(norm) + " > 1");
  }
  // Overshoot within the mass tolerance is left alone so recovery stays exact.
  const double scale = norm > 1.0 + kMassTolerance ? 1.0 / norm : 1.0;
  const std::size_t d = v.size();
  std::vector<double> out(2 * d + 1, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    const double x = v[j] * scale;
    out[j] = std::max(x, 0.0);
    out[j + d] = std::max(-x, 0.0);
  }
  out[2 * d] = std::max(0.0, 1.0 - norm * scale);
  return ProbVector(std::move(out));
}

std::vector<double> lift_recover(std::span<const double> y) {
  if (y.size() % 2 == 0) {
    throw InvalidArgument("lifted vector must have odd length 2d+1, got " + std::to_string(y.size()));
  }
  const std::size_t d = y.size() / 2;
  std::vector<double> out(d);
  for (std::size_t j = 0; j < d; ++j) out[j] = y[j] - y[j + d];
  return out;
}

BoundResult dimension_bound(std::uint64_t k, std::uint64_t n, double epsilon) {
  if (k < 2) throw InvalidArgument("k must be at least 2");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be finite and >= 0");
  BoundResult b;
  b.k = k;
  b.n = n;
  b.epsilon = epsilon;
  const double km1 = static_cast<double>(k - 1);
  b.delta = km1 * epsilon / 2.0;
  b.applicable = km1 * epsilon < 1.0;
  if (!b.applicable) return b;

  b.per_level_term = std::log2(static_cast<double>(k)) - b.delta * std::log2(km1) - binary_entropy(b.delta);
  b.raw_bound = std::exp2(b.per_level_term * static_cast<double>(n) - 1.0) - 0.5;
  const double ceiling = std::ceil(b.raw_bound - kCeilSlack);
  constexpr double kSaturate = 18446744073709549568.0;  // largest double below 2^64
  if (ceiling >= kSaturate) {
    b.min_dimension = std::numeric_limits<std::uint64_t>::max();
  } else {
    b.min_dimension = std::max<std::uint64_t>(1, ceiling > 0.0 ? static_cast<std::uint64_t>(ceiling) : 0);
  }
  return b;
}

BoundResult bound_for_distortion(std::uint64_t k, std::uint64_t n, double distortion) {
  if (!(distortion >= 1.0) || !std::isfinite(distortion)) {
    throw InvalidArgument("distortion must be finite and >= 1");
  }
  return dimension_bound(k, n, 1.0 - 1.0 / distortion);
}

std::uint64_t choose_k(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidArgument("choose_k needs epsilon in (0, 1/2)");
  const double k = std::floor(1.0 / (epsilon * std::log2(1.0 / epsilon)));
  if (k > static_cast<double>(kMaxEdgeCount)) throw CapacityError("epsilon too small for an exact k");
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(k));
}

PredictorResult predictor_success(std::span<const ProbVector> q) {
  if (q.size() < 2) throw InvalidArgument("predictor needs at least two distributions");
  const std::size_t d = q.front().size();
  for (const ProbVector& p : q) {
    if (p.size() != d) throw InvalidArgument("distributions over different alphabets");
  }
  PredictorResult out;
  out.guess.resize(d, 0);
  double mass = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < q.size(); ++a) {
      if (q[a][j] > q[best][j]) best = a;
    }
    out.guess[j] = best;
    mass += q[best][j];
  }
  out.success = mass / static_cast<double>(q.size());
  return out;
}

CertificateReport certify(const PointSet& points, const Embedding& emb) {
  CertificateReport report;
  report.distortion = distortion(points, emb);
  if (!report.distortion.injective) {
    throw DegenerateEmbedding("embedding maps two distinct points to the same vector");
  }
  const Embedding normalized = normalize_lipschitz(points, emb);
  report.constraints = constraint_report(points, normalized);
  report.bound = dimension_bound(points.params().k, points.params().n, report.constraints.epsilon);
  report.embedding_dimension = emb.dimension();
  report.consistent = report.embedding_dimension >= report.bound.min_dimension;
  return report;
}

}  // namespace l1lb
