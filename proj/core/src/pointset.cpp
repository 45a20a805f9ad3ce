#include "l1lb/pointset.hpp"

#include <string>

#include "l1lb/error.hpp"

namespace l1lb {
namespace {

__extension__ using u128 = unsigned __int128;

/// base^exp, or 0 when the result would exceed `limit`.
std::uint64_t bounded_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (result > limit / base) return 0;
    result *= base;
  }
  return result;
}

// An edge of some level together with what is needed to refine it: its
// endpoints, the label of its tail, and the block [lo, hi) of coordinates on
// which tail and head differ (the tail is zero there, the head is one).
struct Frame {
  std::vector<std::uint64_t> path;
  VertexAddress tail;
  VertexAddress head;
  IntervalLabel tail_label;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

Frame root_frame(const GraphParams& p) {
  const std::uint64_t dim = label_dimension(p);
  return {{}, VertexAddress::root_left(), VertexAddress::root_right(), IntervalLabel(dim), 0, dim};
}

VertexAddress cycle_vertex(const Frame& f, std::uint64_t k, std::uint64_t position) {
  position %= 2 * k;
  if (position == 0) return f.tail;
  if (position == k) return f.head;
  return VertexAddress::inner(f.path, position);
}

// Top vertex i carries k-i zeros then i ones on the block, bottom vertex i
// carries i ones then k-i zeros; bottom vertex i sits at position 2k-i.
IntervalLabel cycle_label(const Frame& f, std::uint64_t k, std::uint64_t position) {
  position %= 2 * k;
  const std::uint64_t width = (f.hi - f.lo) / k;
  if (position <= k) return f.tail_label.with_ones(f.lo + (k - position) * width, f.hi);
  const std::uint64_t ones = 2 * k - position;
  return f.tail_label.with_ones(f.lo, f.lo + ones * width);
}

// Top edge b joins positions b-1 -> b. Bottom edge k+b joins positions
// k+b -> k+b-1, i.e. it also points towards the local right vertex.
std::pair<std::uint64_t, std::uint64_t> cycle_edge_positions(std::uint64_t k, std::uint64_t b) {
  if (b <= k) return {b - 1, b};
  const std::uint64_t j = b - k;
  return {k + j, k + j - 1};
}

Frame refine(const Frame& f, std::uint64_t k, std::uint64_t b) {
  const auto [tail_pos, head_pos] = cycle_edge_positions(k, b);
  const std::uint64_t width = (f.hi - f.lo) / k;
  const std::uint64_t slot = b <= k ? b : b - k;
  Frame child;
  child.path = f.path;
  child.path.push_back(b);
  child.tail = cycle_vertex(f, k, tail_pos);
  child.head = cycle_vertex(f, k, head_pos);
  child.tail_label = cycle_label(f, k, tail_pos);
  child.lo = f.lo + (k - slot) * width;
  child.hi = child.lo + width;
  return child;
}

Frame walk(const GraphParams& p, std::span<const std::uint64_t> prefix) {
  Frame f = root_frame(p);
  for (std::uint64_t b : prefix) f = refine(f, p.k, b);
  return f;
}

void visit_frames(const Frame& f, std::uint64_t k, std::uint64_t depth,
                  const std::function<void(const Frame&)>& visit) {
  if (depth == 0) {
    visit(f);
    return;
  }
  for (std::uint64_t b = 1; b <= 2 * k; ++b) visit_frames(refine(f, k, b), k, depth - 1, visit);
}

// Number of vertices created at levels 1..m-1 plus the two roots.
std::uint64_t level_offset(const GraphParams& p, std::uint64_t m) {
  const std::uint64_t per_cycle = 2 * p.k - 2;
  std::uint64_t offset = 2;
  std::uint64_t cycles = 1;
  for (std::uint64_t level = 1; level < m; ++level) {
    offset += cycles * per_cycle;
    cycles *= 2 * p.k;
  }
  return offset;
}

}  // namespace

void validate(const GraphParams& params) {
  if (params.k < 2) throw InvalidArgument("k must be at least 2, got " + std::to_string(params.k));
  if (params.n < 1) throw InvalidArgument("n must be at least 1, got " + std::to_string(params.n));
  if (params.k > kMaxEdgeCount || bounded_pow(2 * params.k, params.n, kMaxEdgeCount) == 0) {
    throw CapacityError("(2k)^n exceeds 2^48 for k=" + std::to_string(params.k) +
                        " n=" + std::to_string(params.n));
  }
}

std::uint64_t vertex_count(const GraphParams& params) {
  validate(params);
  const u128 two_k = 2 * params.k;
  const u128 numerator = (two_k - 2) * edge_count(params) + two_k;
  return static_cast<std::uint64_t>(numerator / (two_k - 1));
}

std::uint64_t edge_count(const GraphParams& params) {
  validate(params);
  return bounded_pow(2 * params.k, params.n, kMaxEdgeCount);
}

std::uint64_t label_dimension(const GraphParams& params) {
  validate(params);
  return bounded_pow(params.k, params.n, kMaxEdgeCount);
}

std::strong_ordering canonical_compare(const VertexAddress& a, const VertexAddress& b) {
  if (auto c = a.level() <=> b.level(); c != 0) return c;
  if (a.kind != VertexAddress::Kind::kInner || b.kind != VertexAddress::Kind::kInner) {
    return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
  }
  if (auto c = a.path <=> b.path; c != 0) return c;
  return a.position <=> b.position;
}

RecursiveCycleGraph::RecursiveCycleGraph(GraphParams params, Orientation orientation)
    : params_(params), orientation_(orientation) {
  validate(params_);
}

RecursiveCycleGraph build_graph(GraphParams params, Orientation orientation) {
  return RecursiveCycleGraph(params, orientation);
}

bool RecursiveCycleGraph::contains(const VertexAddress& v) const {
  if (v.kind != VertexAddress::Kind::kInner) return v.path.empty() && v.position == 0;
  if (v.path.size() + 1 > params_.n) return false;
  for (std::uint64_t b : v.path) {
    if (b < 1 || b > 2 * params_.k) return false;
  }
  return v.position >= 1 && v.position < 2 * params_.k && v.position != params_.k;
}

std::uint64_t RecursiveCycleGraph::vertex_index(const VertexAddress& v) const {
  if (!contains(v)) throw InvalidArgument("vertex is not part of G_{k,n}");
  if (v.kind == VertexAddress::Kind::kRootLeft) return 0;
  if (v.kind == VertexAddress::Kind::kRootRight) return 1;
  const std::uint64_t k = params_.k;
  std::uint64_t rank = 0;
  for (std::uint64_t b : v.path) rank = rank * 2 * k + (b - 1);
  const std::uint64_t slot = v.position < k ? v.position - 1 : v.position - 2;
  return level_offset(params_, v.level()) + rank * (2 * k - 2) + slot;
}

VertexAddress RecursiveCycleGraph::vertex_at(std::uint64_t index) const {
  if (index >= vertex_count()) {
    throw InvalidArgument("vertex index " + std::to_string(index) + " out of range");
  }
  if (index == 0) return VertexAddress::root_left();
  if (index == 1) return VertexAddress::root_right();
  const std::uint64_t k = params_.k;
  std::uint64_t m = 1;
  while (m < params_.n && level_offset(params_, m + 1) <= index) ++m;
  std::uint64_t local = index - level_offset(params_, m);
  const std::uint64_t slot = local % (2 * k - 2);
  std::uint64_t rank = local / (2 * k - 2);
  std::vector<std::uint64_t> path(m - 1);
  for (std::size_t i = path.size(); i-- > 0;) {
    path[i] = rank % (2 * k) + 1;
    rank /= 2 * k;
  }
  const std::uint64_t position = slot + 1 < k ? slot + 1 : slot + 2;
  return VertexAddress::inner(std::move(path), position);
}

IntervalLabel RecursiveCycleGraph::vertex_label(const VertexAddress& v) const {
  if (!contains(v)) throw InvalidArgument("vertex is not part of G_{k,n}");
  const std::uint64_t dim = label_dimension();
  switch (v.kind) {
    case VertexAddress::Kind::kRootLeft:
      return IntervalLabel(dim);
    case VertexAddress::Kind::kRootRight:
      return IntervalLabel(dim, {{0, dim}});
    case VertexAddress::Kind::kInner:
      break;
  }
  return cycle_label(walk(params_, v.path), params_.k, v.position);
}

void RecursiveCycleGraph::check_prefix(std::span<const std::uint64_t> prefix) const {
  if (prefix.size() > params_.n) {
    throw InvalidArgument("edge prefix longer than n=" + std::to_string(params_.n));
  }
  for (std::uint64_t b : prefix) {
    if (b < 1 || b > 2 * params_.k) {
      throw InvalidArgument("edge label coordinate " + std::to_string(b) + " outside [1, 2k]");
    }
  }
}

OrientedEdge RecursiveCycleGraph::edge_endpoints(std::span<const std::uint64_t> prefix) const {
  check_prefix(prefix);
  Frame f = walk(params_, prefix);
  OrientedEdge edge{std::move(f.tail), std::move(f.head)};
  if (orientation_ == Orientation::kFlippedBottom && !prefix.empty() && prefix.back() > params_.k) {
    std::swap(edge.tail, edge.head);
  }
  return edge;
}

std::vector<std::pair<VertexAddress, VertexAddress>> RecursiveCycleGraph::antipodal_pairs(
    std::uint64_t level) const {
  if (level < 1 || level > params_.n) {
    throw InvalidArgument("level " + std::to_string(level) + " outside [1, n]");
  }
  const std::uint64_t k = params_.k;
  const std::uint64_t cycles = bounded_pow(2 * k, level - 1, kMaxEdgeCount);
  if (cycles > kMaxMaterialized / k) throw CapacityError("too many antipodal pairs to list");
  std::vector<std::pair<VertexAddress, VertexAddress>> pairs;
  pairs.reserve(cycles * k);
  visit_frames(root_frame(params_), k, level - 1, [&](const Frame& f) {
    for (std::uint64_t q = 0; q < k; ++q) {
      pairs.emplace_back(cycle_vertex(f, k, q), cycle_vertex(f, k, q + k));
    }
  });
  return pairs;
}

std::uint64_t RecursiveCycleGraph::edge_rank(const EdgeLabel& x) const {
  if (x.coords.size() != params_.n) throw InvalidArgument("edge label must have length n");
  check_prefix(x.coords);
  std::uint64_t rank = 0;
  for (std::uint64_t b : x.coords) rank = rank * 2 * params_.k + (b - 1);
  return rank;
}

EdgeLabel RecursiveCycleGraph::edge_label_at(std::uint64_t rank) const {
  if (rank >= edge_count()) throw InvalidArgument("edge rank out of range");
  EdgeLabel x{std::vector<std::uint64_t>(params_.n)};
  for (std::size_t i = x.coords.size(); i-- > 0;) {
    x.coords[i] = rank % (2 * params_.k) + 1;
    rank /= 2 * params_.k;
  }
  return x;
}

void RecursiveCycleGraph::for_each_edge(
    const std::function<void(const EdgeLabel&, const OrientedEdge&)>& visit) const {
  if (edge_count() > kMaxMaterialized) throw CapacityError("too many edges to enumerate");
  const bool flip = orientation_ == Orientation::kFlippedBottom;
  visit_frames(root_frame(params_), params_.k, params_.n, [&](const Frame& f) {
    OrientedEdge edge{f.tail, f.head};
    if (flip && f.path.back() > params_.k) std::swap(edge.tail, edge.head);
    visit(EdgeLabel{f.path}, edge);
  });
}

PointSet::PointSet(RecursiveCycleGraph graph) : graph_(std::move(graph)) {
  const GraphParams& p = graph_.params();
  const std::uint64_t total = graph_.vertex_count();
  if (total > kMaxMaterialized) {
    throw CapacityError("point set with " + std::to_string(total) +
                        " vertices is too large to materialize");
  }
  addresses_.reserve(total);
  labels_.reserve(total);
  addresses_.push_back(VertexAddress::root_left());
  labels_.push_back(graph_.vertex_label(addresses_.back()));
  addresses_.push_back(VertexAddress::root_right());
  labels_.push_back(graph_.vertex_label(addresses_.back()));
  for (std::uint64_t m = 1; m <= p.n; ++m) {
    visit_frames(root_frame(p), p.k, m - 1, [&](const Frame& f) {
      for (std::uint64_t q = 1; q < 2 * p.k; ++q) {
        if (q == p.k) continue;
        addresses_.push_back(VertexAddress::inner(f.path, q));
        labels_.push_back(cycle_label(f, p.k, q));
      }
    });
  }
}

}  // namespace l1lb
