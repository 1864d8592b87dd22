#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "urig/error.hpp"
#include "urig/key_rings.hpp"

namespace urig {

// Disjoint-set forest with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t count) : parent_(count), size_(count, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) noexcept {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct ComponentReport {
  std::size_t component_count = 0;
  std::vector<std::size_t> sizes;  // descending
  std::size_t isolated_count = 0;
  std::size_t largest = 0;

  // (size, count) pairs in descending size order.
  std::vector<std::pair<std::size_t, std::size_t>> histogram() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s : sizes) {
      if (!out.empty() && out.back().first == s) {
        ++out.back().second;
      } else {
        out.emplace_back(s, 1);
      }
    }
    return out;
  }

  static ComponentReport from_sizes(std::vector<std::size_t> sizes) {
    std::sort(sizes.begin(), sizes.end(), std::greater<>{});
    ComponentReport r;
    r.component_count = sizes.size();
    r.largest = sizes.empty() ? 0 : sizes.front();
    r.isolated_count = static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), 1));
    r.sizes = std::move(sizes);
    return r;
  }

  friend bool operator==(const ComponentReport&, const ComponentReport&) = default;
};

// Components of G via the vertex-colour incidence structure: element v < n is
// a vertex, element n + c is colour c. Two vertices are joined in G exactly
// when they reach each other through shared colours. O((nk + m) alpha).
template <KeyRingRows Table>
ComponentReport components_union_find(const Table& table) {
  const std::size_t n = table.n();
  const auto m = static_cast<std::size_t>(table.m());
  DisjointSets sets(n + m);
  for (std::size_t v = 0; v < n; ++v) {
    for (Colour c : table.row(v)) sets.unite(v, n + c);
  }
  std::vector<std::size_t> count(n + m, 0);
  for (std::size_t v = 0; v < n; ++v) ++count[sets.find(v)];
  std::vector<std::size_t> sizes;
  for (std::size_t c : count) {
    if (c > 0) sizes.push_back(c);
  }
  return ComponentReport::from_sizes(std::move(sizes));
}

// Breadth-first search over explicit pairwise edge queries, O(n^2 k).
// Intended as an independent oracle for small instances.
template <KeyRingRows Table>
ComponentReport components_bfs(const Table& table) {
  const std::size_t n = table.n();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> sizes;
  std::queue<std::size_t> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    frontier.push(s);
    std::size_t size = 0;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      ++size;
      for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v] && v != u && edge_query(table, u, v)) {
          seen[v] = true;
          frontier.push(v);
        }
      }
    }
    sizes.push_back(size);
  }
  return ComponentReport::from_sizes(std::move(sizes));
}

template <KeyRingRows Table>
bool is_connected(const Table& table) {
  return components_union_find(table).component_count == 1;
}

// A vertex is isolated iff each of its colours is held by it alone; vertices
// with empty rows are isolated.
template <KeyRingRows Table>
std::size_t isolated_count(const Table& table) {
  std::vector<std::uint32_t> holders(static_cast<std::size_t>(table.m()), 0);
  for (std::size_t v = 0; v < table.n(); ++v) {
    for (Colour c : table.row(v)) {
      if (holders[c] < 2) ++holders[c];
    }
  }
  std::size_t isolated = 0;
  for (std::size_t v = 0; v < table.n(); ++v) {
    const auto row = table.row(v);
    isolated += std::all_of(row.begin(), row.end(), [&](Colour c) { return holders[c] == 1; });
  }
  return isolated;
}

// Colour graph for k = 2: colours are vertices; each key ring {x, y} is an edge.
struct ColourGraph {
  std::uint64_t m = 0;
  std::vector<std::pair<Colour, Colour>> edges;  // sorted, first < second, distinct

  friend bool operator==(const ColourGraph&, const ColourGraph&) = default;
};

template <KeyRingRows Table>
ColourGraph colour_graph(const Table& table) {
  ColourGraph h;
  h.m = table.m();
  h.edges.reserve(table.n());
  for (std::size_t v = 0; v < table.n(); ++v) {
    const auto row = table.row(v);
    if (row.size() != 2) {
      throw ParameterError("colour_graph: row " + std::to_string(v) + " does not hold 2 colours");
    }
    h.edges.emplace_back(row[0], row[1]);
  }
  std::sort(h.edges.begin(), h.edges.end());
  h.edges.erase(std::unique(h.edges.begin(), h.edges.end()), h.edges.end());
  return h;
}

// True iff every edge lies in a single component; edgeless graphs qualify.
inline bool is_near_connected(const ColourGraph& h) {
  if (h.edges.empty()) return true;
  DisjointSets sets(static_cast<std::size_t>(h.m));
  for (const auto& [a, b] : h.edges) sets.unite(a, b);
  const std::size_t root = sets.find(h.edges.front().first);
  return std::all_of(h.edges.begin(), h.edges.end(),
                     [&](const auto& e) { return sets.find(e.first) == root; });
}

// Number of unordered vertex pairs holding identical key rings.
template <KeyRingRows Table>
std::uint64_t coincident_pairs(const Table& table) {
  std::vector<std::size_t> order(table.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    const auto ra = table.row(a), rb = table.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  auto same = [&](std::size_t a, std::size_t b) {
    const auto ra = table.row(a), rb = table.row(b);
    return std::equal(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && same(order[i], order[j])) ++j;
    const std::uint64_t run = j - i;
    pairs += run * (run - 1) / 2;
    i = j;
  }
  return pairs;
}

}  // namespace urig
