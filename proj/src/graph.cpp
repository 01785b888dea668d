#include "mstu/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mstu {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  std::size_t rx = find(x), ry = find(y);
  if (rx == ry) return false;
  if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
  parent_[ry] = rx;
  if (rank_[rx] == rank_[ry]) ++rank_[rx];
  return true;
}

std::vector<EdgeId> kruskal(std::size_t vertex_count, std::span<const Edge> edges,
                            const std::function<bool(EdgeId, EdgeId)>& before) {
  std::vector<EdgeId> order(edges.size());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(), before);

  DisjointSets components(vertex_count);
  std::vector<EdgeId> tree;
  tree.reserve(vertex_count - 1);
  for (EdgeId e : order) {
    if (components.unite(edges[e].u, edges[e].v)) {
      tree.push_back(e);
    }
  }
  if (tree.size() + 1 != vertex_count) {
    throw std::invalid_argument("spanning tree does not exist: graph is disconnected");
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

CycleDecomposition decompose_cycles(std::size_t vertex_count, std::span<const Edge> edges,
                                    std::span<const EdgeId> tree_edges) {
  CycleDecomposition result;
  result.tree_edges.assign(tree_edges.begin(), tree_edges.end());
  std::sort(result.tree_edges.begin(), result.tree_edges.end());

  // parent pointers of the tree rooted at 0
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency(vertex_count);
  for (EdgeId e : tree_edges) {
    adjacency[edges[e].u].push_back({edges[e].v, e});
    adjacency[edges[e].v].push_back({edges[e].u, e});
  }
  std::vector<VertexId> parent(vertex_count, vertex_count);
  std::vector<EdgeId> parent_edge(vertex_count, edges.size());
  std::vector<std::size_t> depth(vertex_count, 0);
  std::vector<VertexId> stack = {0};
  std::vector<bool> seen(vertex_count, false);
  seen[0] = true;
  while (!stack.empty()) {
    const VertexId at = stack.back();
    stack.pop_back();
    for (auto [next, via] : adjacency[at]) {
      if (!seen[next]) {
        seen[next] = true;
        parent[next] = at;
        parent_edge[next] = via;
        depth[next] = depth[at] + 1;
        stack.push_back(next);
      }
    }
  }

  std::vector<bool> in_tree(edges.size(), false);
  for (EdgeId e : tree_edges) in_tree[e] = true;

  for (EdgeId f = 0; f < edges.size(); ++f) {
    if (in_tree[f]) continue;
    std::vector<EdgeId> cycle = {f};
    VertexId a = edges[f].u, b = edges[f].v;
    std::vector<EdgeId> from_b;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        cycle.push_back(parent_edge[a]);
        a = parent[a];
      } else {
        from_b.push_back(parent_edge[b]);
        b = parent[b];
      }
    }
    cycle.insert(cycle.end(), from_b.rbegin(), from_b.rend());
    result.nontree.push_back(f);
    result.cycles.push_back(std::move(cycle));
  }
  return result;
}

bool is_cactus(const CycleDecomposition& decomposition, std::size_t edge_count) {
  std::vector<unsigned> uses(edge_count, 0);
  for (const auto& cycle : decomposition.cycles) {
    for (EdgeId e : cycle) {
      if (++uses[e] > 1) return false;
    }
  }
  return true;
}

bool is_cactus(std::size_t vertex_count, std::span<const Edge> edges) {
  const std::vector<EdgeId> tree =
      kruskal(vertex_count, edges, [](EdgeId a, EdgeId b) { return a < b; });
  return is_cactus(decompose_cycles(vertex_count, edges, tree), edges.size());
}

}  // namespace mstu
