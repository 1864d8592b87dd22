#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

#include "urig/error.hpp"

namespace urig::theory {

namespace detail {

inline void check_mk(std::uint64_t m, std::uint64_t k) {
  if (k == 0) throw ParameterError("k must be at least 1");
  if (k > m) throw ParameterError("k exceeds m");
}

// log of C(m - c*k, k) / C(m, k) = sum_{i<k} log(1 - c*k / (m - i)).
// Returns -infinity when the numerator binomial vanishes (m - c*k < k).
inline double log_disjoint_ratio(std::uint64_t m, std::uint64_t k, std::uint64_t c) {
  if (c * k + k > m) return -std::numeric_limits<double>::infinity();
  const double kk = static_cast<double>(c * k);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    sum += std::log1p(-kk / static_cast<double>(m - i));
  }
  return sum;
}

}  // namespace detail

// Probability that two distinct vertices share a colour:
// 1 - C(m-k,k)/C(m,k), exactly 1 once 2k > m.
inline double exact_edge_probability(std::uint64_t m, std::uint64_t k) {
  detail::check_mk(m, k);
  if (2 * k > m) return 1.0;
  return -std::expm1(detail::log_disjoint_ratio(m, k, 1));
}

// The k^2/m approximation, clamped to 1.
inline double approx_edge_probability(std::uint64_t m, std::uint64_t k) {
  if (m == 0) throw ParameterError("m must be at least 1");
  const double kd = static_cast<double>(k);
  return std::min(1.0, kd * kd / static_cast<double>(m));
}

// Probability that a fixed vertex is isolated: q^(n-1), q = C(m-k,k)/C(m,k).
inline double isolation_probability(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  if (n == 0) throw ParameterError("n must be at least 1");
  detail::check_mk(m, k);
  if (n == 1) return 1.0;
  if (2 * k > m) return 0.0;
  return std::exp(static_cast<double>(n - 1) * detail::log_disjoint_ratio(m, k, 1));
}

// E(X) = n q^(n-1), the expected number of isolated vertices.
inline double expected_isolated(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  return static_cast<double>(n) * isolation_probability(n, m, k);
}

// Probability that two fixed vertices are both isolated:
// [C(m-k,k)/C(m,k)] [C(m-2k,k)/C(m,k)]^(n-2).
inline double pairwise_isolated_probability(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  if (n < 2) throw ParameterError("pairwise isolation needs n >= 2");
  detail::check_mk(m, k);
  const double log_q1 = detail::log_disjoint_ratio(m, k, 1);
  if (std::isinf(log_q1)) return 0.0;
  if (n == 2) return std::exp(log_q1);
  const double log_q2 = detail::log_disjoint_ratio(m, k, 2);
  if (std::isinf(log_q2)) return 0.0;
  return std::exp(log_q1 + static_cast<double>(n - 2) * log_q2);
}

// n(n-1) E(X_u1 X_u2) / E(X)^2; tends to 1 below the isolation threshold.
inline double second_moment_ratio(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  if (n < 2) throw ParameterError("second moment ratio needs n >= 2");
  detail::check_mk(m, k);
  const double log_q1 = detail::log_disjoint_ratio(m, k, 1);
  if (std::isinf(log_q1)) {
    throw DegenerateRegimeError("expected number of isolated vertices is zero (2k > m)");
  }
  const double nd = static_cast<double>(n);
  const double log_e = std::log(nd) + (nd - 1.0) * log_q1;
  double log_pair = log_q1;
  if (n > 2) {
    const double log_q2 = detail::log_disjoint_ratio(m, k, 2);
    if (std::isinf(log_q2)) return 0.0;
    log_pair += (nd - 2.0) * log_q2;
  }
  return std::exp(std::log(nd) + std::log(nd - 1.0) + log_pair - 2.0 * log_e);
}

enum class Verdict { below, critical, above };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::below: return "below";
    case Verdict::critical: return "critical";
    case Verdict::above: return "above";
  }
  return "critical";
}

struct ThresholdReport {
  double ratio = 0.0;   // k^2 n / (m ln n)
  double gap = 0.0;     // k^2 n / m - ln n
  double k2_gap = 0.0;  // 4n/m - ln n; only meaningful for k = 2
  Verdict verdict = Verdict::critical;
};

inline ThresholdReport threshold_report(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  if (n < 2) throw ParameterError("threshold report needs n >= 2");
  if (m == 0) throw ParameterError("m must be at least 1");
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double log_n = std::log(nd);
  const double scaled = kd * kd * nd / md;
  ThresholdReport r;
  r.ratio = scaled / log_n;
  r.gap = scaled - log_n;
  r.k2_gap = 4.0 * nd / md - log_n;
  r.verdict = r.gap > 0.0 ? Verdict::above : (r.gap < 0.0 ? Verdict::below : Verdict::critical);
  return r;
}

// Edge count above which a uniform random graph on m vertices is near
// connected: (m/4)(ln m + ln ln m + omega').
inline double near_connectivity_edge_threshold(std::uint64_t m, double omega_prime) {
  if (m < 3) throw ParameterError("near-connectivity threshold needs m >= 3");
  const double md = static_cast<double>(m);
  return md / 4.0 * (std::log(md) + std::log(std::log(md)) + omega_prime);
}

struct PlanResult {
  std::uint64_t min_k = 2;
  bool saturated = false;        // even k = m misses the target
  bool below_threshold = false;  // margin < 1 was requested
};

// Smallest k >= 2 with k^2 n / m >= margin ln n, capped at m.
inline PlanResult min_k_for_connectivity(std::uint64_t n, std::uint64_t m, double margin) {
  if (n < 3) throw ParameterError("planner needs n >= 3");
  if (m == 0) throw ParameterError("m must be at least 1");
  if (!(margin > 0.0) || !std::isfinite(margin)) throw ParameterError("margin must be positive");
  PlanResult plan;
  plan.below_threshold = margin < 1.0;
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  const double target = margin * std::log(nd);
  auto enough = [&](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return kd * kd * nd / md >= target;
  };
  auto k = static_cast<std::uint64_t>(std::ceil(std::sqrt(target * md / nd)));
  k = std::max<std::uint64_t>(k, 2);
  while (k > 2 && enough(k - 1)) --k;
  while (!enough(k) && k < m) ++k;
  if (k >= m) {
    plan.saturated = !enough(m);
    k = m;
  }
  plan.min_k = k;
  return plan;
}

// ln(n)/n, the Erdos-Renyi G(n,p) connectivity threshold.
inline double er_threshold_probability(std::uint64_t n) {
  if (n < 2) throw ParameterError("n must be at least 2");
  const double nd = static_cast<double>(n);
  return std::clamp(std::log(nd) / nd, 0.0, 1.0);
}

}  // namespace urig::theory
