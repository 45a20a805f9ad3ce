#include "l1lb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "l1lb/certifier.hpp"
#include "l1lb/error.hpp"

namespace l1lb {
namespace {

constexpr double kLemmaTolerance = 1e-9;


struct PairStats {
  double max_ratio = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t max_i = 0, max_j = 1;
  std::size_t min_i = 0, min_j = 1;
};

PairStats scan_pairs(const std::vector<double>& original, const Embedding& emb) {
  PairStats s;
  const std::size_t n = emb.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ratio = l1_distance(emb.row(i), emb.row(j)) / original[i * n + j];
      if (ratio > s.max_ratio) {
        s.max_ratio = ratio;
        s.max_i = i;
        s.max_j = j;
      }
      if (ratio < s.min_ratio) {
        s.min_ratio = ratio;
        s.min_i = i;
        s.min_j = j;
      }
    }
  }
  return s;
}

Embedding block_sum_start(const PointSet& points, std::size_t d) {
  const std::uint64_t dim = points.dimension();
  const std::uint64_t used = std::min<std::uint64_t>(d, dim);
  Embedding emb(points.size(), d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = emb.row(i);
    for (const Interval& iv : points.label(i).ones()) {
      for (std::uint64_t c = iv.begin; c < iv.end; ++c) row[c * used / dim] += 1.0;
    }
  }
  return emb;
}

Embedding random_start(std::size_t points, std::size_t d, double spread, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Embedding emb(points, d);
  for (std::size_t i = 0; i < points; ++i) {
    for (double& x : emb.row(i)) x = spread * unit(rng);
  }
  return emb;
}

// Moves points i and j so that their l1 distance shrinks (direction = +1) or
// grows (direction = -1) by roughly the relative amount `step`.
void move_pair(Embedding& emb, std::size_t i, std::size_t j, double direction, double step,
               double original, std::mt19937_64& rng) {
  auto a = emb.row(i);
  auto b = emb.row(j);
  const double d = static_cast<double>(a.size());
  const double len = l1_distance(a, b);
  if (len == 0.0) {
    std::bernoulli_distribution coin(0.5);
    for (std::size_t c = 0; c < a.size(); ++c) {
      const double push = step * original / (2.0 * d) * (coin(rng) ? 1.0 : -1.0);
      a[c] += push;
      b[c] -= push;
    }
    return;
  }
  const double amount = direction * step * len / (2.0 * d);
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    a[c] -= amount * sign;
    b[c] += amount * sign;
  }
}

}  // namespace

std::vector<double> brute_force_average(const PointSet& points, const Embedding& emb,
                                        std::span<const std::uint64_t> prefix) {
  const RecursiveCycleGraph& g = points.graph();
  if (emb.size() != points.size()) throw InvalidArgument("embedding does not cover the point set");
  if (prefix.size() > g.n()) throw InvalidArgument("prefix longer than n");
  const std::uint64_t free_coords = g.n() - prefix.size();
  std::uint64_t completions = 1;
  for (std::uint64_t i = 0; i < free_coords; ++i) {
    completions *= 2 * g.k();
    if (completions > kMaxCompletions) throw CapacityError("more than 10^6 completions to enumerate");
  }
  std::vector<std::uint64_t> x(prefix.begin(), prefix.end());
  x.resize(g.n(), 1);
  std::vector<double> sum(emb.dimension(), 0.0);
  for (std::uint64_t t = 0; t < completions; ++t) {
    const OrientedEdge e = g.edge_endpoints(x);
    const auto head = emb.row(points.index_of(e.head));
    const auto tail = emb.row(points.index_of(e.tail));
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += head[j] - tail[j];
    for (std::size_t c = x.size(); c-- > prefix.size();) {
      if (++x[c] <= 2 * g.k()) break;
      x[c] = 1;
    }
  }
  for (double& v : sum) v /= static_cast<double>(completions);
  return sum;
}

ClaimGap max_claim_gap(std::span<const double> p) {
  if (p.empty()) throw InvalidArgument("max claim needs at least one value");
  double total = 0.0;
  double largest = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("max claim needs nonnegative values");
    total += x;
    largest = std::max(largest, x);
  }
  ClaimGap gap;
  gap.lhs = total - largest;
  double head = 0.0;
  for (std::size_t r = 1; r < p.size(); ++r) {
    head += p[r - 1];
    gap.rhs += total - std::abs(head - (total - head));
  }
  gap.rhs *= 0.5;
  return gap;
}

LemmaReport lemma_check(std::span<const ProbVector> p) {
  if (p.size() < 4 || p.size() % 2 != 0) {
    throw InvalidArgument("lemma check needs 2k distributions with k >= 2");
  }
  const std::size_t k = p.size() / 2;
  const std::size_t d = p.front().size();
  for (const ProbVector& pa : p) {
    if (pa.size() != d) throw InvalidArgument("distributions over different alphabets");
  }

  LemmaReport rep;
  rep.k = k;
  rep.d = d;

  std::vector<ProbVector> q;
  q.reserve(k);
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<double> w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = 0.5 * (p[a][j] + p[a + k][j]);
    q.emplace_back(std::move(w));
  }

  rep.separation = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < k; ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double v = 0.0;
      for (std::size_t a = 0; a < k; ++a) v += a < r ? q[a][j] : -q[a][j];
      s += std::abs(v);
    }
    rep.separation = std::min(rep.separation, s / static_cast<double>(k));
  }
  rep.epsilon = std::max(0.0, 1.0 - rep.separation);
  rep.delta = static_cast<double>(k - 1) * rep.epsilon / 2.0;
  rep.applicable = rep.delta < 0.5;

  std::vector<double> full(2 * k * d);
  std::vector<double> folded(k * d);
  for (std::size_t a = 0; a < 2 * k; ++a) {
    for (std::size_t j = 0; j < d; ++j) {
      full[a * d + j] = p[a][j] / static_cast<double>(2 * k);
      folded[(a % k) * d + j] += p[a][j] / static_cast<double>(2 * k);
    }
  }
  rep.mi_exact = mutual_information(JointDistribution({2 * k, d}, std::move(full)), 0, 1);
  rep.mi_folded = mutual_information(JointDistribution({k, d}, std::move(folded)), 0, 1);
  rep.predictor_success = predictor_success(q).success;

  if (rep.applicable) {
    const double kd = static_cast<double>(k);
    rep.bound = std::log2(kd) - rep.delta * std::log2(kd - 1.0) - binary_entropy(rep.delta);
    rep.holds = rep.mi_exact >= rep.bound - kLemmaTolerance &&
                rep.mi_exact >= rep.mi_folded - kLemmaTolerance &&
                rep.mi_folded >= rep.bound - kLemmaTolerance &&
                rep.predictor_success >= 1.0 - rep.delta - kLemmaTolerance;
  }
  return rep;
}

SearchResult search_embedding(const PointSet& points, const SearchConfig& cfg) {
  if (cfg.target_dimension == 0 || cfg.iterations == 0 || cfg.restarts == 0) {
    throw InvalidArgument("search needs positive dimension, iterations and restarts");
  }
  if (!(cfg.step_initial > 0.0) || !(cfg.step_decay > 0.0)) {
    throw InvalidArgument("search step schedule must be positive");
  }
  const std::size_t n = points.size();
  if (n < 2 || n > kMaxSearchPoints) {
    throw InvalidArgument("search supports between 2 and 2000 points, got " + std::to_string(n));
  }

  std::vector<double> original(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      original[i * n + j] = original[j * n + i] = static_cast<double>(points.distance(i, j));
    }
  }
  const double spread = static_cast<double>(points.distance(0, 1));

  SearchResult best;
  double best_distortion = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(cfg.seed + restart);
    Embedding emb = restart == 0 ? block_sum_start(points, cfg.target_dimension)
                                 : random_start(n, cfg.target_dimension, spread, rng);
    for (std::size_t t = 0; t <= cfg.iterations; ++t) {
      const PairStats s = scan_pairs(original, emb);
      const double current = s.min_ratio > 0.0 ? s.max_ratio / s.min_ratio
                                               : std::numeric_limits<double>::infinity();
      if (!have_best || current < best_distortion) {
        have_best = true;
        best_distortion = current;
        best.embedding = emb;
        best.best_restart = restart;
      }
      if (t == cfg.iterations || current == 1.0) break;

      const double step =
          cfg.step_initial / std::pow(static_cast<double>(t + 1), cfg.step_decay);
      if (s.min_ratio > 0.0) {
        const double centre = 1.0 / std::sqrt(s.max_ratio * s.min_ratio);
        for (std::size_t i = 0; i < n; ++i) {
          for (double& x : emb.row(i)) x *= centre;
        }
      }
      move_pair(emb, s.max_i, s.max_j, +1.0, step, original[s.max_i * n + s.max_j], rng);
      move_pair(emb, s.min_i, s.min_j, -1.0, step, original[s.min_i * n + s.min_j], rng);
    }
  }
  best.report = distortion(points, best.embedding);
  return best;
}

JointDistribution build_message_joint(const PointSet& points, const Embedding& emb) {
  const GraphParams& p = points.params();
  const std::size_t symbols = 2 * emb.dimension() + 1;
  const std::uint64_t edges = points.graph().edge_count();
  if (edges > kMaxJointCells / symbols) throw CapacityError("message joint exceeds 2^24 cells");

  const EdgeVectorMap f = edge_difference_map(points, emb);
  std::vector<double> table;
  table.reserve(edges * symbols);
  const double weight = 1.0 / static_cast<double>(edges);
  for (std::uint64_t rank = 0; rank < edges; ++rank) {
    const ProbVector g = nonneg_lift(f.row(rank));
    for (double w : g.weights()) table.push_back(w * weight);
  }
  std::vector<std::size_t> sizes(p.n, 2 * p.k);
  sizes.push_back(symbols);
  return JointDistribution(std::move(sizes), std::move(table));
}

}  // namespace l1lb
