#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "urig/error.hpp"
#include "urig/rng.hpp"

namespace urig {

// Colours are the dense integers [0, m); vertices are the row indices [0, n).
using Colour = std::uint32_t;
using Vertex = std::uint32_t;

inline constexpr std::uint64_t kMaxColours = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 32;

struct Params {
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  std::uint64_t k = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (n == 0) throw ParameterError("n must be at least 1");
    if (n > kMaxVertices) throw ParameterError("n exceeds 2^32");
    if (m == 0) throw ParameterError("m must be at least 1");
    if (m > kMaxColours) throw ParameterError("m exceeds 2^32");
    if (k == 0) throw ParameterError("k must be at least 1");
    if (k > m) {
      throw ParameterError("k = " + std::to_string(k) + " exceeds m = " + std::to_string(m));
    }
    detail::checked_mul(n, k, "n*k");
  }

  friend bool operator==(const Params&, const Params&) = default;
};

// Anything that exposes n sorted key rings over the colours [0, m).
template <class T>
concept KeyRingRows = requires(const T& t, std::size_t i) {
  { t.n() } -> std::convertible_to<std::size_t>;
  { t.m() } -> std::convertible_to<std::uint64_t>;
  { t.row(i) } -> std::convertible_to<std::span<const Colour>>;
};

namespace detail {

inline void check_row(std::span<const Colour> row, std::uint64_t m, std::size_t index) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] >= m) {
      throw ParameterError("row " + std::to_string(index) + ": colour " +
                           std::to_string(row[j]) + " outside [0, m)");
    }
    if (j > 0 && row[j - 1] >= row[j]) {
      throw ParameterError("row " + std::to_string(index) + " is not strictly increasing");
    }
  }
}

}  // namespace detail

// Uniform model: n rows of exactly k colours, stored contiguously.
class KeyRingTable {
 public:
  KeyRingTable() = default;

  // Takes ownership of a row-major buffer of n*k colours; every row is checked.
  KeyRingTable(std::uint64_t m, std::uint64_t k, std::vector<Colour> colours)
      : m_(m), k_(k), colours_(std::move(colours)) {
    if (m == 0 || m > kMaxColours) throw ParameterError("m must lie in [1, 2^32]");
    if (k == 0 || k > m) throw ParameterError("k must lie in [1, m]");
    if (colours_.size() % k != 0) throw ParameterError("buffer length is not a multiple of k");
    if (n() > kMaxVertices) throw ParameterError("n exceeds 2^32");
    for (std::size_t i = 0; i < n(); ++i) detail::check_row(row(i), m_, i);
  }

  static KeyRingTable from_rows(std::uint64_t m, std::uint64_t k,
                                const std::vector<std::vector<Colour>>& rows) {
    std::vector<Colour> flat;
    flat.reserve(rows.size() * k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != k) {
        throw ParameterError("row " + std::to_string(i) + " does not have k entries");
      }
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return KeyRingTable(m, k, std::move(flat));
  }

  std::size_t n() const noexcept { return k_ == 0 ? 0 : colours_.size() / k_; }
  std::uint64_t m() const noexcept { return m_; }
  std::uint64_t k() const noexcept { return k_; }

  std::span<const Colour> row(std::size_t i) const noexcept {
    return {colours_.data() + i * k_, static_cast<std::size_t>(k_)};
  }

  std::span<const Colour> colours() const noexcept { return colours_; }

  friend bool operator==(const KeyRingTable&, const KeyRingTable&) = default;

 private:
  struct Unchecked {};
  KeyRingTable(Unchecked, std::uint64_t m, std::uint64_t k, std::vector<Colour> colours)
      : m_(m), k_(k), colours_(std::move(colours)) {}

  friend KeyRingTable sample_key_rings(const Params& params);
  friend KeyRingTable extend_key_rings(const KeyRingTable& table, std::uint64_t k_target,
                                       std::uint64_t seed);

  std::uint64_t m_ = 1;
  std::uint64_t k_ = 1;
  std::vector<Colour> colours_;
};

// Non-uniform model G(n,m,p): rows of varying (possibly zero) length.
class VariableKeyRingTable {
 public:
  VariableKeyRingTable() : offsets_{0} {}

  explicit VariableKeyRingTable(std::uint64_t m) : m_(m), offsets_{0} {
    if (m == 0 || m > kMaxColours) throw ParameterError("m must lie in [1, 2^32]");
  }

  static VariableKeyRingTable from_rows(std::uint64_t m,
                                        const std::vector<std::vector<Colour>>& rows) {
    VariableKeyRingTable t(m);
    for (const auto& r : rows) t.push_row(r);
    return t;
  }

  void push_row(std::span<const Colour> r) {
    detail::check_row(r, m_, n());
    colours_.insert(colours_.end(), r.begin(), r.end());
    offsets_.push_back(colours_.size());
  }

  std::size_t n() const noexcept { return offsets_.size() - 1; }
  std::uint64_t m() const noexcept { return m_; }

  std::span<const Colour> row(std::size_t i) const noexcept {
    return {colours_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::size_t total_size() const noexcept { return colours_.size(); }

  friend bool operator==(const VariableKeyRingTable&, const VariableKeyRingTable&) = default;

 private:
  friend VariableKeyRingTable sample_gnmp(std::uint64_t n, std::uint64_t m, double p,
                                          std::uint64_t seed);

  std::uint64_t m_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<Colour> colours_;
};

static_assert(KeyRingRows<KeyRingTable>);
static_assert(KeyRingRows<VariableKeyRingTable>);

namespace detail {

// Floyd's subset sampling: draws `count` distinct values from [0, universe)
// uniformly, appending them to `out` in unspecified order.
class SubsetSampler {
 public:
  void draw(Engine& rng, std::uint64_t universe, std::uint64_t count, std::vector<Colour>& out) {
    const std::size_t start = out.size();
    const bool small = count <= kLinearLimit;
    if (!small) seen_.clear();
    for (std::uint64_t j = universe - count; j < universe; ++j) {
      std::uniform_int_distribution<std::uint64_t> pick(0, j);
      auto t = static_cast<Colour>(pick(rng));
      bool present;
      if (small) {
        present = std::find(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(), t) !=
                  out.end();
      } else {
        present = !seen_.insert(t).second;
      }
      if (present) {
        t = static_cast<Colour>(j);
        if (!small) seen_.insert(t);
      }
      out.push_back(t);
    }
  }

 private:
  static constexpr std::uint64_t kLinearLimit = 48;
  std::unordered_set<Colour> seen_;
};

// Appends one uniform sorted k-subset of [0, m) to `out`.
inline void sample_ring(Engine& rng, SubsetSampler& sampler, std::uint64_t m, std::uint64_t k,
                        std::vector<Colour>& out) {
  const std::size_t start = out.size();
  if (k == m) {
    for (std::uint64_t c = 0; c < m; ++c) out.push_back(static_cast<Colour>(c));
    return;
  }
  sampler.draw(rng, m, k, out);
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
}

}  // namespace detail

// Draws each row independently and uniformly from the k-subsets of [0, m).
inline KeyRingTable sample_key_rings(const Params& params) {
  params.validate();
  const std::uint64_t n = params.n, m = params.m, k = params.k;
  std::vector<Colour> flat;
  flat.reserve(static_cast<std::size_t>(n * k));
  Engine rng = make_engine(params.seed);
  detail::SubsetSampler sampler;
  for (std::uint64_t v = 0; v < n; ++v) detail::sample_ring(rng, sampler, m, k, flat);
  return KeyRingTable(KeyRingTable::Unchecked{}, m, k, std::move(flat));
}

// Adds k_target - k colours to every row, drawn uniformly without replacement
// from the colours the row lacks. Rows only grow, so edges are only added; a
// uniform k-subset extended this way is a uniform k_target-subset.
inline KeyRingTable extend_key_rings(const KeyRingTable& table, std::uint64_t k_target,
                                     std::uint64_t seed) {
  const std::uint64_t m = table.m(), k = table.k();
  if (k_target < k) throw ParameterError("k_target is smaller than the current ring size");
  if (k_target > m) throw ParameterError("k_target exceeds m");
  if (k_target == k) return table;

  const std::uint64_t extra = k_target - k;
  std::vector<Colour> flat;
  flat.reserve(table.n() * k_target);
  Engine rng = make_engine(seed);
  detail::SubsetSampler sampler;
  std::vector<Colour> ranks;
  std::vector<Colour> added;
  for (std::size_t v = 0; v < table.n(); ++v) {
    const auto old_row = table.row(v);
    ranks.clear();
    sampler.draw(rng, m - k, extra, ranks);
    std::sort(ranks.begin(), ranks.end());
    // The r-th absent colour is r plus the number of present colours below it.
    added.clear();
    std::size_t e = 0;
    for (Colour r : ranks) {
      std::uint64_t c = std::uint64_t{r} + e;
      while (e < old_row.size() && old_row[e] <= c) {
        ++e;
        ++c;
      }
      added.push_back(static_cast<Colour>(c));
    }
    const std::size_t start = flat.size();
    flat.resize(start + k_target);
    std::merge(old_row.begin(), old_row.end(), added.begin(), added.end(),
               flat.begin() + static_cast<std::ptrdiff_t>(start));
  }
  return KeyRingTable(KeyRingTable::Unchecked{}, m, k_target, std::move(flat));
}

// Non-uniform model: each (vertex, colour) membership is an independent
// Bernoulli(p) draw. Memberships are generated by geometric gap skipping.
inline VariableKeyRingTable sample_gnmp(std::uint64_t n, std::uint64_t m, double p,
                                        std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  Params{n, m, 1, seed}.validate();
  VariableKeyRingTable t(m);
  t.offsets_.reserve(n + 1);
  Engine rng = make_engine(seed);
  for (std::uint64_t v = 0; v < n; ++v) {
    if (p == 1.0) {
      for (std::uint64_t c = 0; c < m; ++c) t.colours_.push_back(static_cast<Colour>(c));
    } else if (p > 0.0) {
      std::geometric_distribution<std::uint64_t> gap(p);
      std::uint64_t c = gap(rng);
      while (c < m) {
        t.colours_.push_back(static_cast<Colour>(c));
        const std::uint64_t skip = gap(rng);
        if (skip >= m) break;
        c += skip + 1;
      }
    }
    t.offsets_.push_back(t.colours_.size());
  }
  return t;
}

// Linear merge over two sorted rings.
inline bool rings_intersect(std::span<const Colour> a, std::span<const Colour> b) noexcept {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

// Adjacency test: the two sorted rows share a colour.
template <KeyRingRows Table>
bool edge_query(const Table& table, std::size_t u, std::size_t v) {
  if (u == v) throw UsageError("edge_query: u and v must differ");
  if (u >= table.n() || v >= table.n()) throw UsageError("edge_query: vertex out of range");
  return rings_intersect(table.row(u), table.row(v));
}

// Inverse of the assignment map: for each colour, the ascending vertices holding it.
class ColourIndex {
 public:
  std::uint64_t m() const noexcept { return offsets_.size() - 1; }

  std::span<const Vertex> bucket(Colour c) const noexcept {
    return {vertices_.data() + offsets_[c], offsets_[std::size_t{c} + 1] - offsets_[c]};
  }

  std::size_t bucket_size(Colour c) const noexcept {
    return offsets_[std::size_t{c} + 1] - offsets_[c];
  }
  std::size_t total_size() const noexcept { return vertices_.size(); }

 private:
  template <KeyRingRows Table>
  friend ColourIndex build_colour_index(const Table& table);

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> vertices_;
};

template <KeyRingRows Table>
ColourIndex build_colour_index(const Table& table) {
  const std::uint64_t m = table.m();
  ColourIndex index;
  index.offsets_.assign(m + 1, 0);
  for (std::size_t v = 0; v < table.n(); ++v) {
    for (Colour c : table.row(v)) ++index.offsets_[std::size_t{c} + 1];
  }
  for (std::uint64_t c = 0; c < m; ++c) index.offsets_[c + 1] += index.offsets_[c];
  index.vertices_.resize(index.offsets_[m]);
  std::vector<std::size_t> cursor(index.offsets_.begin(), index.offsets_.end() - 1);
  // Visiting vertices in order leaves each bucket sorted.
  for (std::size_t v = 0; v < table.n(); ++v) {
    for (Colour c : table.row(v)) index.vertices_[cursor[c]++] = static_cast<Vertex>(v);
  }
  return index;
}

}  // namespace urig
