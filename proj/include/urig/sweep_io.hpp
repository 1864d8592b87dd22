#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "json.hpp"

#include "urig/error.hpp"
#include "urig/experiments.hpp"
#include "urig/theory.hpp"

namespace urig {

// Sweep configuration as JSON, mirroring SweepSpec:
//   { "n_values": [...], "k_values": [...], "trials": T, "master_seed": S,
//     "m_rule": {"explicit": [...]} | {"power_law": alpha} | {"ratio_targeted": [...]} }
inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw ParameterError(std::string("sweep config: missing \"") + key + "\"");
    return j.at(key);
  };
  try {
    SweepSpec spec;
    spec.n_values = require("n_values").get<std::vector<std::uint64_t>>();
    spec.k_values = require("k_values").get<std::vector<std::uint64_t>>();
    spec.trials = require("trials").get<std::uint64_t>();
    spec.master_seed = require("master_seed").get<std::uint64_t>();
    const auto& rule = require("m_rule");
    if (!rule.is_object() || rule.size() != 1) {
      throw ParameterError("sweep config: m_rule must hold exactly one of "
                           "explicit, power_law, ratio_targeted");
    }
    if (rule.contains("explicit")) {
      spec.m_rule = ExplicitM{rule.at("explicit").get<std::vector<std::uint64_t>>()};
    } else if (rule.contains("power_law")) {
      spec.m_rule = PowerLawM{rule.at("power_law").get<double>()};
    } else if (rule.contains("ratio_targeted")) {
      spec.m_rule = RatioTargetedM{rule.at("ratio_targeted").get<std::vector<double>>()};
    } else {
      throw ParameterError("sweep config: unknown m_rule '" + rule.begin().key() + "'");
    }
    return spec;
  } catch (const nlohmann::json::type_error& e) {
    throw ParameterError(std::string("sweep config: ") + e.what());
  } catch (const nlohmann::json::out_of_range& e) {
    throw ParameterError(std::string("sweep config: ") + e.what());
  }
}

namespace detail {

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "n,m,k,trials,p_conn,p_conn_lo,p_conn_hi,p_noiso,p_noiso_lo,p_noiso_hi,"
    "mean_components,mean_largest,ratio,gap";

inline constexpr const char* kTrialCsvHeader =
    "n,m,k,trial_index,seed,connected,isolated,components,largest,coincident_pairs";

// ratio and gap are left empty for n = 1, where ln n = 0.
inline std::string sweep_csv_row(const CellSummary& s) {
  using detail::fixed6;
  const Params& p = s.params;
  std::string row = std::to_string(p.n) + ',' + std::to_string(p.m) + ',' + std::to_string(p.k) +
                    ',' + std::to_string(s.trials) + ',' + fixed6(s.connected.point) + ',' +
                    fixed6(s.connected.ci_low) + ',' + fixed6(s.connected.ci_high) + ',' +
                    fixed6(s.no_isolated.point) + ',' + fixed6(s.no_isolated.ci_low) + ',' +
                    fixed6(s.no_isolated.ci_high) + ',' + fixed6(s.mean_components) + ',' +
                    fixed6(s.mean_largest) + ',';
  if (p.n >= 2) {
    const auto t = theory::threshold_report(p.n, p.m, p.k);
    row += fixed6(t.ratio) + ',' + fixed6(t.gap);
  } else {
    row += ',';
  }
  return row;
}

inline std::string trial_csv_row(const TrialRecord& r) {
  std::string row = std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + std::to_string(r.k) +
                    ',' + std::to_string(r.trial_index) + ',' + std::to_string(r.seed) + ',' +
                    (r.connected ? "1" : "0") + ',' + std::to_string(r.isolated) + ',' +
                    std::to_string(r.components) + ',' + std::to_string(r.largest) + ',';
  if (r.coincident_pairs) row += std::to_string(*r.coincident_pairs);
  return row;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<CellSummary>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) out << sweep_csv_row(r) << '\n';
}

}  // namespace urig
