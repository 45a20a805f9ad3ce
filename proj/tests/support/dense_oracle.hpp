#pragma once

// Test-only reference construction of the recursive cycle graph, following
// the textual recipe literally on dense bit vectors: start from a 2k-cycle,
// then repeatedly duplicate every coordinate k times and replace each edge by
// a fresh cycle whose new vertices rewrite the k coordinates on which the
// edge endpoints differ. It knows nothing about addresses or edge labels.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace l1lb::testing {

using Bits = std::vector<std::uint8_t>;

struct DenseGraph {
  std::vector<Bits> labels;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // antipodal[l-1] holds the antipodal pairs of every level-l cycle.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> antipodal;
};

inline Bits cycle_bits(const Bits& left, const std::vector<std::size_t>& block, std::size_t k,
                       std::size_t position) {
  // position 0..k along the top path, k+1..2k-1 back along the bottom path.
  Bits out = left;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint8_t bit;
    if (position <= k) {
      bit = c >= k - position ? 1 : 0;  // k-i zeros then i ones
    } else {
      const std::size_t i = 2 * k - position;
      bit = c < i ? 1 : 0;  // i ones then k-i zeros
    }
    out[block[c]] = bit;
  }
  return out;
}

inline DenseGraph build_dense(std::size_t k, std::size_t n) {
  DenseGraph g;
  g.labels = {Bits{0}, Bits{1}};
  g.edges = {{0, 1}};
  for (std::size_t level = 1; level <= n; ++level) {
    for (Bits& b : g.labels) {
      Bits wide;
      for (std::uint8_t x : b) wide.insert(wide.end(), k, x);
      b = std::move(wide);
    }
    std::vector<std::pair<std::size_t, std::size_t>> next_edges;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto [u, v] : g.edges) {
      std::vector<std::size_t> block;
      for (std::size_t c = 0; c < g.labels[u].size(); ++c) {
        if (g.labels[u][c] != g.labels[v][c]) block.push_back(c);
      }
      // The distinguished vertex that is zero on the block plays "left".
      const bool u_left = g.labels[u][block.front()] == 0;
      const std::size_t left = u_left ? u : v;
      const std::size_t right = u_left ? v : u;
      std::vector<std::size_t> ids(2 * k);
      ids[0] = left;
      ids[k] = right;
      for (std::size_t q = 1; q < 2 * k; ++q) {
        if (q == k) continue;
        ids[q] = g.labels.size();
        g.labels.push_back(cycle_bits(g.labels[left], block, k, q));
      }
      for (std::size_t q = 0; q < 2 * k; ++q) next_edges.emplace_back(ids[q], ids[(q + 1) % (2 * k)]);
      for (std::size_t q = 0; q < k; ++q) pairs.emplace_back(ids[q], ids[q + k]);
    }
    g.edges = std::move(next_edges);
    g.antipodal.push_back(std::move(pairs));
  }
  return g;
}

inline std::pair<Bits, Bits> unordered(const Bits& a, const Bits& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace l1lb::testing
