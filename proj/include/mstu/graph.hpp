#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mstu/core.hpp"

namespace mstu {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns false if x and y were already joined.
  bool unite(std::size_t x, std::size_t y);

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

/// Kruskal over the given edge order (a strict weak order on edge ids).
/// Returns tree edge ids sorted ascending. Throws on disconnected graphs.
std::vector<EdgeId> kruskal(std::size_t vertex_count, std::span<const Edge> edges,
                            const std::function<bool(EdgeId, EdgeId)>& before);

/// Non-tree edges f_i paired with the unique cycle each closes in tree+f_i.
/// Cycles list f_i first, then the tree path edges.
struct CycleDecomposition {
  std::vector<EdgeId> tree_edges;
  std::vector<EdgeId> nontree;
  std::vector<std::vector<EdgeId>> cycles;
};

CycleDecomposition decompose_cycles(std::size_t vertex_count, std::span<const Edge> edges,
                                    std::span<const EdgeId> tree_edges);

/// A graph is a cactus iff its fundamental cycles are pairwise edge-disjoint,
/// which holds for one spanning tree iff it holds for all.
bool is_cactus(const CycleDecomposition& decomposition, std::size_t edge_count);
bool is_cactus(std::size_t vertex_count, std::span<const Edge> edges);

}  // namespace mstu
