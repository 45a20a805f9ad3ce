#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "l1lb/interval_label.hpp"

namespace l1lb {

/// Largest accepted edge count (2k)^n; keeps all counting exact in 64 bits.
inline constexpr std::uint64_t kMaxEdgeCount = std::uint64_t{1} << 48;

/// Largest vertex / edge count that may be materialized as explicit lists.
inline constexpr std::uint64_t kMaxMaterialized = std::uint64_t{1} << 22;

/// Half-cycle length k >= 2 and recursion depth n >= 1.
struct GraphParams {
  std::uint64_t k = 2;
  std::uint64_t n = 1;

  friend bool operator==(const GraphParams&, const GraphParams&) = default;
};

/// Throws InvalidArgument for k < 2 or n < 1, CapacityError when (2k)^n > 2^48.
void validate(const GraphParams& params);

/// Number of vertices, from the closed form ((2k-2)(2k)^n + 2k) / (2k-1).
std::uint64_t vertex_count(const GraphParams& params);

/// (2k)^n.
std::uint64_t edge_count(const GraphParams& params);

/// k^n, the length of every vertex label.
std::uint64_t label_dimension(const GraphParams& params);

/// Canonical name of a vertex.
///
/// The two roots are the endpoints of a virtual level-0 edge. Every other
/// vertex is created on the cycle that refines the edge named by `path`
/// (edge labels in [2k], outermost first, so the vertex lives at level
/// path.size() + 1). `position` runs around that cycle starting at the local
/// left vertex (0): 1..k-1 is the top path, k is the local right vertex and
/// k+1..2k-1 is the bottom path walked back towards the left.
struct VertexAddress {
  enum class Kind : std::uint8_t { kRootLeft, kRootRight, kInner };

  Kind kind = Kind::kRootLeft;
  std::vector<std::uint64_t> path;
  std::uint64_t position = 0;

  static VertexAddress root_left() { return {Kind::kRootLeft, {}, 0}; }
  static VertexAddress root_right() { return {Kind::kRootRight, {}, 0}; }
  static VertexAddress inner(std::vector<std::uint64_t> path, std::uint64_t position) {
    return {Kind::kInner, std::move(path), position};
  }

  /// Creation level: 0 for the roots.
  std::uint64_t level() const { return kind == Kind::kInner ? path.size() + 1 : 0; }

  friend bool operator==(const VertexAddress&, const VertexAddress&) = default;
};

/// Export order: creation level, then lexicographic path, then position.
std::strong_ordering canonical_compare(const VertexAddress& a, const VertexAddress& b);

/// Label of a full-depth edge, x_1 (outermost level) first, each in [2k].
struct EdgeLabel {
  std::vector<std::uint64_t> coords;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct OrientedEdge {
  VertexAddress tail;
  VertexAddress head;
};

/// Orientation of bottom-path edges. kFlippedBottom exists only to let the
/// self-test demonstrate that the identity-embedding equality detects a wrong
/// convention; labels are unaffected by it.
enum class Orientation : std::uint8_t { kStandard, kFlippedBottom };

/// The recursive cycle graph G_{k,n}, represented implicitly.
///
/// Nothing is stored besides the parameters: labels, endpoints and indices
/// are computed from addresses in O(n * runs) time, so queries stay cheap even
/// for graphs far too large to materialize.
class RecursiveCycleGraph {
 public:
  explicit RecursiveCycleGraph(GraphParams params,
                               Orientation orientation = Orientation::kStandard);

  const GraphParams& params() const { return params_; }
  Orientation orientation() const { return orientation_; }
  std::uint64_t k() const { return params_.k; }
  std::uint64_t n() const { return params_.n; }
  std::uint64_t vertex_count() const { return l1lb::vertex_count(params_); }
  std::uint64_t edge_count() const { return l1lb::edge_count(params_); }
  std::uint64_t label_dimension() const { return l1lb::label_dimension(params_); }

  bool contains(const VertexAddress& v) const;

  /// Position of `v` in export order. Throws InvalidArgument for unknown vertices.
  std::uint64_t vertex_index(const VertexAddress& v) const;
  VertexAddress vertex_at(std::uint64_t index) const;

  IntervalLabel vertex_label(const VertexAddress& v) const;

  /// Endpoints of the level-l edge named by a prefix of length l in [0, n].
  /// The empty prefix names the root edge (RootLeft, RootRight).
  OrientedEdge edge_endpoints(std::span<const std::uint64_t> prefix) const;

  /// The k antipodal pairs of every level-l cycle, l in [1, n], cycles in
  /// lexicographic order of their path.
  std::vector<std::pair<VertexAddress, VertexAddress>> antipodal_pairs(std::uint64_t level) const;

  /// Lexicographic rank of a full-depth edge label, and its inverse.
  std::uint64_t edge_rank(const EdgeLabel& x) const;
  EdgeLabel edge_label_at(std::uint64_t rank) const;

  /// Visits every full-depth edge in lexicographic label order.
  void for_each_edge(const std::function<void(const EdgeLabel&, const OrientedEdge&)>& visit) const;

 private:
  void check_prefix(std::span<const std::uint64_t> prefix) const;

  GraphParams params_;
  Orientation orientation_;
};

/// Validates and constructs G_{k,n}.
RecursiveCycleGraph build_graph(GraphParams params,
                                Orientation orientation = Orientation::kStandard);

/// The materialized point set P_{k,n}: all vertex addresses in export order
/// together with their labels.
class PointSet {
 public:
  explicit PointSet(RecursiveCycleGraph graph);

  const RecursiveCycleGraph& graph() const { return graph_; }
  const GraphParams& params() const { return graph_.params(); }
  std::size_t size() const { return addresses_.size(); }
  std::uint64_t dimension() const { return graph_.label_dimension(); }

  const std::vector<VertexAddress>& addresses() const { return addresses_; }
  const std::vector<IntervalLabel>& labels() const { return labels_; }
  const VertexAddress& address(std::size_t i) const { return addresses_[i]; }
  const IntervalLabel& label(std::size_t i) const { return labels_[i]; }

  std::size_t index_of(const VertexAddress& v) const {
    return static_cast<std::size_t>(graph_.vertex_index(v));
  }

  /// Exact label distance between points i and j.
  std::uint64_t distance(std::size_t i, std::size_t j) const {
    return l1_interval_distance(labels_[i], labels_[j]);
  }

 private:
  RecursiveCycleGraph graph_;
  std::vector<VertexAddress> addresses_;
  std::vector<IntervalLabel> labels_;
};

}  // namespace l1lb
