#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "urig/connectivity.hpp"
#include "urig/error.hpp"
#include "urig/key_rings.hpp"

namespace urig {

using Rational = boost::multiprecision::cpp_rational;

enum class Event { connected, has_isolated };

inline std::string_view to_string(Event e) noexcept {
  return e == Event::connected ? "connected" : "has_isolated";
}

inline Event parse_event(std::string_view name) {
  if (name == "connected") return Event::connected;
  if (name == "has_isolated") return Event::has_isolated;
  throw ParameterError("unknown event '" + std::string(name) +
                       "' (expected connected or has_isolated)");
}

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

// All k-subsets of [0, m) in lexicographic order.
inline std::vector<std::vector<Colour>> all_k_subsets(std::uint64_t m, std::uint64_t k) {
  std::vector<std::vector<Colour>> out;
  std::vector<Colour> cur(k);
  for (std::uint64_t i = 0; i < k; ++i) cur[i] = static_cast<Colour>(i);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Number of equally likely assignments, C(m,k)^n, or nullopt past `limit`.
inline std::optional<std::uint64_t> assignment_count(std::uint64_t n, std::uint64_t m,
                                                     std::uint64_t k, std::uint64_t limit) {
  boost::multiprecision::cpp_int subsets = 1;
  for (std::uint64_t i = 0; i < k; ++i) subsets = subsets * (m - i) / (i + 1);
  boost::multiprecision::cpp_int total = 1;
  for (std::uint64_t v = 0; v < n; ++v) {
    total *= subsets;
    if (total > limit) return std::nullopt;
  }
  return total.convert_to<std::uint64_t>();
}

// Exact probability of `event` in G(n,m,k) by enumerating all C(m,k)^n
// assignments and testing each with the breadth-first oracle.
inline Rational brute_force_probability(std::uint64_t n, std::uint64_t m, std::uint64_t k,
                                        Event event) {
  Params{n, m, k, 0}.validate();
  const auto total = assignment_count(n, m, k, kEnumerationLimit);
  if (!total) {
    throw ParameterError("instance too large to enumerate: C(m,k)^n must be <= " +
                         std::to_string(kEnumerationLimit));
  }
  const auto subsets = all_k_subsets(m, k);
  std::vector<std::size_t> choice(n, 0);
  std::vector<Colour> flat(n * k);
  std::uint64_t hits = 0;
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      std::copy(subsets[choice[v]].begin(), subsets[choice[v]].end(), flat.begin() + v * k);
    }
    const KeyRingTable table(m, k, flat);
    const ComponentReport report = components_bfs(table);
    hits += event == Event::connected ? report.component_count == 1 : report.isolated_count > 0;
    std::size_t v = 0;
    while (v < n && ++choice[v] == subsets.size()) choice[v++] = 0;
    if (v == n) break;
  }
  return Rational(hits, *total);
}

inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace urig
