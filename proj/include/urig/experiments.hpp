#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "urig/connectivity.hpp"
#include "urig/error.hpp"
#include "urig/key_rings.hpp"
#include "urig/parallel.hpp"
#include "urig/rng.hpp"
#include "urig/theory.hpp"

namespace urig {

// Binomial proportion with a 95% Wilson score interval.
struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  double standard_error() const {
    return trials == 0 ? 0.0 : std::sqrt(point * (1.0 - point) / static_cast<double>(trials));
  }

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

inline constexpr double kWilsonZ = 1.959963984540054;

inline Estimate wilson_estimate(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw ParameterError("an estimate needs at least one trial");
  if (successes > trials) throw ParameterError("successes exceed trials");
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / t;
  const double centre = (p + z2 / (2.0 * t)) / denom;
  const double half = kWilsonZ * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  e.point = p;
  e.ci_low = std::clamp(std::min(centre - half, p), 0.0, 1.0);
  e.ci_high = std::clamp(std::max(centre + half, p), 0.0, 1.0);
  if (successes == 0) e.ci_low = 0.0;
  if (successes == trials) e.ci_high = 1.0;
  return e;
}

// Stream tags keep the different random sources of one trial independent.
namespace stream {
inline constexpr std::uint64_t kTrial = 1;
inline constexpr std::uint64_t kExtend = 2;
inline constexpr std::uint64_t kErdosRenyi = 3;
inline constexpr std::uint64_t kTriangle = 4;
inline constexpr std::uint64_t kTriangleEr = 5;
}  // namespace stream

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t n, std::uint64_t m,
                                std::uint64_t k, std::uint64_t trial) {
  return derive_seed(master, {stream::kTrial, n, m, k, trial});
}

struct TrialRecord {
  std::uint64_t n = 0, m = 0, k = 0;
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  bool connected = false;
  std::uint64_t isolated = 0;
  std::uint64_t components = 0;
  std::uint64_t largest = 0;
  std::optional<std::uint64_t> coincident_pairs;  // k = 2 only

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// One independent instance of the cell `params`; params.seed is the master seed.
inline TrialRecord run_trial(const Params& params, std::uint64_t trial_index) {
  TrialRecord r;
  r.n = params.n;
  r.m = params.m;
  r.k = params.k;
  r.trial_index = trial_index;
  r.seed = trial_seed(params.seed, params.n, params.m, params.k, trial_index);
  const KeyRingTable table = sample_key_rings({params.n, params.m, params.k, r.seed});
  const ComponentReport report = components_union_find(table);
  r.components = report.component_count;
  r.connected = report.component_count == 1;
  r.isolated = report.isolated_count;
  r.largest = report.largest;
  if (params.k == 2) r.coincident_pairs = coincident_pairs(table);
  return r;
}

inline std::vector<TrialRecord> run_cell(const Params& params, std::uint64_t trials,
                                         unsigned threads = 1) {
  params.validate();
  if (trials == 0) throw ParameterError("trials must be at least 1");
  std::vector<TrialRecord> records(trials);
  parallel_for(trials, threads, [&](std::size_t t) { records[t] = run_trial(params, t); });
  return records;
}

inline Estimate estimate_connectivity(const Params& params, std::uint64_t trials,
                                      unsigned threads = 1) {
  const auto records = run_cell(params, trials, threads);
  const auto hits = std::count_if(records.begin(), records.end(),
                                  [](const TrialRecord& r) { return r.connected; });
  return wilson_estimate(static_cast<std::uint64_t>(hits), trials);
}

struct IsolatedStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  Estimate no_isolated;   // Pr(X = 0)

  double standard_error() const {
    return std::sqrt(variance / static_cast<double>(no_isolated.trials));
  }
};

inline IsolatedStats isolated_stats_of(const std::vector<TrialRecord>& records) {
  const double t = static_cast<double>(records.size());
  IsolatedStats s;
  std::uint64_t zero = 0;
  for (const auto& r : records) {
    s.mean += static_cast<double>(r.isolated);
    zero += r.isolated == 0;
  }
  s.mean /= t;
  for (const auto& r : records) {
    const double d = static_cast<double>(r.isolated) - s.mean;
    s.variance += d * d;
  }
  s.variance = records.size() > 1 ? s.variance / (t - 1.0) : 0.0;
  s.no_isolated = wilson_estimate(zero, records.size());
  return s;
}

inline IsolatedStats estimate_isolated_stats(const Params& params, std::uint64_t trials,
                                             unsigned threads = 1) {
  if (trials < 2) throw ParameterError("isolated-vertex statistics need at least 2 trials");
  return isolated_stats_of(run_cell(params, trials, threads));
}

// ---- sweeps ---------------------------------------------------------------

struct ExplicitM {
  std::vector<std::uint64_t> values;
};
// m = floor(n^alpha)
struct PowerLawM {
  double alpha = 1.0;
};
// m = round(k^2 n / (r ln n)) for each target ratio r
struct RatioTargetedM {
  std::vector<double> ratios;
};
using MRule = std::variant<ExplicitM, PowerLawM, RatioTargetedM>;

struct SweepSpec {
  std::vector<std::uint64_t> n_values;
  MRule m_rule;
  std::vector<std::uint64_t> k_values;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
};

// All (n, m, k) cells of the grid, validated, deduplicated and ordered
// lexicographically. Throws before anything runs if any cell is invalid.
inline std::vector<Params> sweep_cells(const SweepSpec& spec) {
  if (spec.trials == 0) throw ParameterError("trials must be at least 1");
  if (spec.n_values.empty() || spec.k_values.empty()) {
    throw ParameterError("n_values and k_values must be non-empty");
  }
  std::vector<Params> cells;
  auto add = [&](std::uint64_t n, std::uint64_t m, std::uint64_t k) {
    Params p{n, m, k, spec.master_seed};
    p.validate();
    cells.push_back(p);
  };
  for (std::uint64_t n : spec.n_values) {
    for (std::uint64_t k : spec.k_values) {
      std::visit(
          [&](const auto& rule) {
            using Rule = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<Rule, ExplicitM>) {
              if (rule.values.empty()) throw ParameterError("explicit m list is empty");
              for (std::uint64_t m : rule.values) add(n, m, k);
            } else if constexpr (std::is_same_v<Rule, PowerLawM>) {
              if (!(rule.alpha > 0.0)) throw ParameterError("alpha must be positive");
              const double m = std::floor(std::pow(static_cast<double>(n), rule.alpha) + 1e-9);
              if (m < 1.0 || m > static_cast<double>(kMaxColours)) {
                throw ParameterError("power-law m = floor(n^alpha) is out of range for n = " +
                                     std::to_string(n));
              }
              add(n, static_cast<std::uint64_t>(m), k);
            } else {
              if (rule.ratios.empty()) throw ParameterError("ratio list is empty");
              if (n < 2) throw ParameterError("ratio-targeted m needs n >= 2");
              for (double r : rule.ratios) {
                if (!(r > 0.0)) throw ParameterError("target ratios must be positive");
                const double kd = static_cast<double>(k);
                const double m =
                    std::round(kd * kd * static_cast<double>(n) /
                               (r * std::log(static_cast<double>(n))));
                if (m > static_cast<double>(kMaxColours)) {
                  throw ParameterError("ratio-targeted m exceeds 2^32");
                }
                add(n, static_cast<std::uint64_t>(std::max(m, 1.0)), k);
              }
            }
          },
          spec.m_rule);
    }
  }
  auto key = [](const Params& p) { return std::tuple(p.n, p.m, p.k); };
  std::sort(cells.begin(), cells.end(), [&](const Params& a, const Params& b) {
    return key(a) < key(b);
  });
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [&](const Params& a, const Params& b) { return key(a) == key(b); }),
              cells.end());
  return cells;
}

struct CellSummary {
  Params params;
  std::uint64_t trials = 0;
  Estimate connected;
  Estimate no_isolated;
  double mean_components = 0.0;
  double mean_largest = 0.0;
  double mean_isolated = 0.0;
  double var_isolated = 0.0;

  friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

inline CellSummary summarize(const Params& params, const std::vector<TrialRecord>& records) {
  CellSummary s;
  s.params = params;
  s.trials = records.size();
  std::uint64_t connected = 0;
  for (const auto& r : records) {
    connected += r.connected;
    s.mean_components += static_cast<double>(r.components);
    s.mean_largest += static_cast<double>(r.largest);
  }
  const double t = static_cast<double>(records.size());
  s.mean_components /= t;
  s.mean_largest /= t;
  s.connected = wilson_estimate(connected, records.size());
  const IsolatedStats iso = isolated_stats_of(records);
  s.no_isolated = iso.no_isolated;
  s.mean_isolated = iso.mean;
  s.var_isolated = iso.variance;
  return s;
}

using TrialSink = std::function<void(const TrialRecord&)>;

// One summary per cell in lexicographic (n, m, k) order. Trials may run on
// several threads; records are merged by trial index, so the output does not
// depend on the worker count.
inline std::vector<CellSummary> run_sweep(const SweepSpec& spec, unsigned threads = 1,
                                          const TrialSink& trial_sink = {}) {
  const auto cells = sweep_cells(spec);
  std::vector<CellSummary> out;
  out.reserve(cells.size());
  for (const Params& cell : cells) {
    const auto records = run_cell(cell, spec.trials, threads);
    if (trial_sink) {
      for (const auto& r : records) trial_sink(r);
    }
    out.push_back(summarize(cell, records));
  }
  return out;
}

// ---- coupling and comparison experiments ----------------------------------

struct MonotonicityReport {
  std::uint64_t violations = 0;            // connected(sub) && !connected(super)
  std::uint64_t component_increases = 0;   // components(super) > components(sub)
  Estimate sub_connected;
  Estimate super_connected;
};

// Samples G(n,m,k') and extends every ring to k; extension only adds edges,
// so each trial must satisfy connected(sub) => connected(super).
inline MonotonicityReport monotonicity_k_experiment(const Params& params, std::uint64_t k_prime,
                                                    std::uint64_t trials, unsigned threads = 1) {
  params.validate();
  if (!(2 <= k_prime && k_prime < params.k)) {
    throw ParameterError("monotonicity in k needs 2 <= k' < k <= m");
  }
  if (trials == 0) throw ParameterError("trials must be at least 1");
  struct Outcome {
    bool sub = false, super = false, grew = false;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const std::uint64_t seed = trial_seed(params.seed, params.n, params.m, k_prime, t);
    const KeyRingTable sub = sample_key_rings({params.n, params.m, k_prime, seed});
    const KeyRingTable super = extend_key_rings(
        sub, params.k, derive_seed(params.seed, {stream::kExtend, params.n, params.m, params.k, t}));
    const auto a = components_union_find(sub);
    const auto b = components_union_find(super);
    outcomes[t] = {a.component_count == 1, b.component_count == 1,
                   b.component_count > a.component_count};
  });
  MonotonicityReport r;
  std::uint64_t sub_hits = 0, super_hits = 0;
  for (const auto& o : outcomes) {
    sub_hits += o.sub;
    super_hits += o.super;
    r.violations += o.sub && !o.super;
    r.component_increases += o.grew;
  }
  r.sub_connected = wilson_estimate(sub_hits, trials);
  r.super_connected = wilson_estimate(super_hits, trials);
  return r;
}

// Independent, uncoupled estimates at m and m + 1.
inline std::pair<Estimate, Estimate> monotonicity_m_experiment(std::uint64_t n, std::uint64_t k,
                                                               std::uint64_t m,
                                                               std::uint64_t trials,
                                                               std::uint64_t seed,
                                                               unsigned threads = 1) {
  const Params at_m{n, m, k, seed}, at_m1{n, m + 1, k, seed};
  at_m.validate();
  at_m1.validate();
  return {estimate_connectivity(at_m, trials, threads),
          estimate_connectivity(at_m1, trials, threads)};
}

struct TriangleResult {
  Estimate intersection;   // Pr(uw | uv, vw) in G(3,m,k)
  Estimate erdos_renyi;    // the same conditional in G(3,p), p matched
  std::uint64_t intersection_instances = 0;  // rings drawn
  std::uint64_t erdos_renyi_instances = 0;   // edge indicators drawn
  double edge_probability = 0.0;
};

inline constexpr std::uint64_t kMinConditioningEvents = 100;

// Estimates Pr(uw | uv, vw) from `conditioning_samples` draws of the
// conditional law. Given v's ring, the events uv and vw are independent, so u
// and w are rejection-sampled separately against v; `max_draws` caps the total
// number of rings drawn. The Erdos-Renyi side uses p = exact_edge_probability
// with independent edges, rejection-sampling uv and vw the same way and
// collecting the same number of conditioning events.
inline TriangleResult triangle_conditional_experiment(std::uint64_t m, std::uint64_t k,
                                                      std::uint64_t conditioning_samples,
                                                      std::uint64_t seed,
                                                      std::uint64_t max_draws = 0) {
  Params{3, m, k, seed}.validate();
  if (k < 2) throw ParameterError("triangle experiment needs k >= 2");
  if (conditioning_samples == 0) throw ParameterError("conditioning_samples must be positive");
  if (max_draws == 0) max_draws = 1000 * conditioning_samples + 1000000;

  TriangleResult res;
  res.edge_probability = theory::exact_edge_probability(m, k);

  Engine rng = make_engine(derive_seed(seed, {stream::kTriangle, m, k}));
  detail::SubsetSampler sampler;
  std::vector<Colour> v, u, w;
  std::uint64_t events = 0, closed = 0;
  auto draw_adjacent = [&](std::vector<Colour>& out) {
    while (res.intersection_instances < max_draws) {
      out.clear();
      detail::sample_ring(rng, sampler, m, k, out);
      ++res.intersection_instances;
      if (rings_intersect(out, v)) return true;
    }
    return false;
  };
  while (events < conditioning_samples && res.intersection_instances < max_draws) {
    v.clear();
    detail::sample_ring(rng, sampler, m, k, v);
    ++res.intersection_instances;
    if (!draw_adjacent(u) || !draw_adjacent(w)) break;
    ++events;
    closed += rings_intersect(u, w);
  }
  if (events < kMinConditioningEvents) {
    throw InsufficientSamplesError("only " + std::to_string(events) +
                                   " conditioning events observed (need 100)");
  }
  res.intersection = wilson_estimate(closed, events);

  Engine er_rng = make_engine(derive_seed(seed, {stream::kTriangleEr, m, k}));
  std::bernoulli_distribution edge(res.edge_probability);
  std::uint64_t er_events = 0, er_closed = 0;
  auto draw_edge = [&] {
    while (res.erdos_renyi_instances < max_draws) {
      ++res.erdos_renyi_instances;
      if (edge(er_rng)) return true;
    }
    return false;
  };
  while (er_events < events && res.erdos_renyi_instances < max_draws) {
    if (!draw_edge() || !draw_edge()) break;  // uv, then vw
    ++er_events;
    ++res.erdos_renyi_instances;
    er_closed += edge(er_rng);
  }
  if (er_events < kMinConditioningEvents) {
    throw InsufficientSamplesError("only " + std::to_string(er_events) +
                                   " Erdos-Renyi conditioning events observed (need 100)");
  }
  res.erdos_renyi = wilson_estimate(er_closed, er_events);
  return res;
}

namespace detail {

// G(n,p) connectivity with independent edges, visiting present pairs by
// geometric gap skipping over the row-major upper triangle.
inline bool erdos_renyi_connected(std::uint64_t n, double p, Engine& rng) {
  if (n <= 1) return true;
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  DisjointSets sets(static_cast<std::size_t>(n));
  std::size_t components = static_cast<std::size_t>(n);
  std::geometric_distribution<std::uint64_t> gap(p);
  std::uint64_t u = 0, row_len = n - 1, pos = gap(rng);
  while (true) {
    while (pos >= row_len) {
      pos -= row_len;
      ++u;
      if (u + 1 >= n) return components == 1;
      row_len = n - u - 1;
    }
    if (sets.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(u + 1 + pos))) {
      if (--components == 1) return true;
    }
    pos += 1 + gap(rng);
  }
}

}  // namespace detail

struct ErComparison {
  Estimate intersection;
  Estimate erdos_renyi;
  double edge_probability = 0.0;
};

// Connectivity of G(n,m,k) against G(n,p) with p = exact_edge_probability(m,k).
inline ErComparison er_comparison(const Params& params, std::uint64_t trials,
                                  unsigned threads = 1) {
  params.validate();
  if (trials == 0) throw ParameterError("trials must be at least 1");
  ErComparison out;
  out.edge_probability = theory::exact_edge_probability(params.m, params.k);
  out.intersection = estimate_connectivity(params, trials, threads);
  std::vector<char> er(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    Engine rng = make_engine(
        derive_seed(params.seed, {stream::kErdosRenyi, params.n, params.m, params.k, t}));
    er[t] = detail::erdos_renyi_connected(params.n, out.edge_probability, rng);
  });
  out.erdos_renyi =
      wilson_estimate(static_cast<std::uint64_t>(std::count(er.begin(), er.end(), 1)), trials);
  return out;
}

struct ComponentStats {
  std::map<std::size_t, std::uint64_t> histogram;  // size -> pooled count
  Estimate middle_component;  // trials with some component of size in (1, n/2]
};

inline ComponentStats component_stats(const Params& params, std::uint64_t trials,
                                      unsigned threads = 1) {
  params.validate();
  if (trials == 0) throw ParameterError("trials must be at least 1");
  std::vector<ComponentReport> reports(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const std::uint64_t seed = trial_seed(params.seed, params.n, params.m, params.k, t);
    reports[t] = components_union_find(sample_key_rings({params.n, params.m, params.k, seed}));
  });
  ComponentStats stats;
  std::uint64_t middle = 0;
  const std::size_t half = static_cast<std::size_t>(params.n / 2);
  for (const auto& r : reports) {
    for (std::size_t s : r.sizes) ++stats.histogram[s];
    middle += std::any_of(r.sizes.begin(), r.sizes.end(),
                          [&](std::size_t s) { return s > 1 && s <= half; });
  }
  stats.middle_component = wilson_estimate(middle, trials);
  return stats;
}

}  // namespace urig
