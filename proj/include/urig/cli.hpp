#pragma once

// Command implementations behind the `urig` executable. Each command writes
// its result to `out`, diagnostics to `err`, and returns the process exit
// code: 0 success, 1 parameter-domain error, 2 I/O or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "json.hpp"

#include "urig/connectivity.hpp"
#include "urig/error.hpp"
#include "urig/experiments.hpp"
#include "urig/key_rings.hpp"
#include "urig/oracle.hpp"
#include "urig/sweep_io.hpp"
#include "urig/table_io.hpp"
#include "urig/theory.hpp"

namespace urig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

using Json = nlohmann::ordered_json;

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const InsufficientSamplesError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  return f;
}

inline void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace detail

struct GenOptions {
  std::uint64_t n = 0, m = 0, k = 0, seed = 0;
  std::string out;
};

inline int run_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Params params{o.n, o.m, o.k, o.seed};
    params.validate();
    const KeyRingTable table = sample_key_rings(params);
    auto file = detail::open_output(o.out);
    write_table(file, table, o.seed);
    detail::finish(file, o.out);
    out << header_line(table, o.seed) << '\n';
  });
}

inline Json report_json(const ComponentReport& r) {
  Json j;
  j["components"] = r.component_count;
  j["largest"] = r.largest;
  j["isolated"] = r.isolated_count;
  Json hist = Json::array();
  for (const auto& [size, count] : r.histogram()) hist.push_back({size, count});
  j["sizes_histogram"] = std::move(hist);
  return j;
}

struct AnalyzeOptions {
  std::string in;
  bool colour_graph = false;
};

inline int run_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto file = detail::open_input(o.in);
    const StoredTable stored = read_table(file);
    const KeyRingTable& t = stored.table;
    if (o.colour_graph && t.k() != 2) {
      throw ParameterError("--colour-graph requires k = 2 (table has k = " +
                           std::to_string(t.k()) + ")");
    }
    const ComponentReport report = components_union_find(t);
    Json j;
    j["n"] = t.n();
    j["m"] = t.m();
    j["k"] = t.k();
    j.update(report_json(report));
    j["connected"] = report.component_count == 1;
    if (o.colour_graph) {
      const ColourGraph h = colour_graph(t);
      j["colour_graph_edges"] = h.edges.size();
      j["near_connected"] = is_near_connected(h);
      j["coincident_pairs"] = coincident_pairs(t);
    }
    out << j.dump() << '\n';
  });
}

struct ProbOptions {
  std::uint64_t n = 0, m = 0, k = 0;
};

inline int run_prob(const ProbOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Params{o.n, o.m, o.k, 0}.validate();
    Json j;
    j["n"] = o.n;
    j["m"] = o.m;
    j["k"] = o.k;
    j["p_exact"] = theory::exact_edge_probability(o.m, o.k);
    j["p_approx"] = theory::approx_edge_probability(o.m, o.k);
    j["e_isolated"] = theory::expected_isolated(o.n, o.m, o.k);
    if (o.n >= 2) {
      const auto t = theory::threshold_report(o.n, o.m, o.k);
      j["ratio"] = t.ratio;
      j["gap"] = t.gap;
      j["verdict"] = std::string(theory::to_string(t.verdict));
      if (o.k == 2) j["k2_gap"] = t.k2_gap;
      if (2 * o.k <= o.m) j["second_moment_ratio"] = theory::second_moment_ratio(o.n, o.m, o.k);
    }
    out << j.dump() << '\n';
  });
}

struct PlanOptions {
  std::uint64_t n = 0, m = 0;
  double margin = 1.0;
};

inline int run_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto plan = theory::min_k_for_connectivity(o.n, o.m, o.margin);
    if (plan.below_threshold) {
      err << "warning: margin " << o.margin
          << " < 1 lies below the connectivity threshold; the planned k is not expected to "
             "give a connected network\n";
    }
    Json j;
    j["n"] = o.n;
    j["m"] = o.m;
    j["margin"] = o.margin;
    j["min_k"] = plan.min_k;
    j["achieved_ratio"] = theory::threshold_report(o.n, o.m, plan.min_k).ratio;
    j["p_exact_at_min_k"] = theory::exact_edge_probability(o.m, plan.min_k);
    j["saturated"] = plan.saturated;
    out << j.dump() << '\n';
  });
}

struct SweepOptions {
  std::string config;
  std::string out = "-";
  std::string trial_log;
  std::optional<std::uint64_t> seed;  // overrides master_seed when set
  unsigned threads = 1;
};

inline SweepSpec load_sweep_spec(const std::string& path) {
  auto file = detail::open_input(path);
  const auto j = nlohmann::json::parse(file);
  return sweep_spec_from_json(j);
}

inline int run_sweep_command(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SweepSpec spec = load_sweep_spec(o.config);
    if (o.seed) spec.master_seed = *o.seed;
    sweep_cells(spec);  // reject invalid grids before opening any output

    std::optional<std::ofstream> trial_file;
    if (!o.trial_log.empty()) {
      trial_file = detail::open_output(o.trial_log);
      *trial_file << kTrialCsvHeader << '\n';
    }
    TrialSink sink;
    if (trial_file) sink = [&](const TrialRecord& r) { *trial_file << trial_csv_row(r) << '\n'; };
    const auto rows = run_sweep(spec, o.threads, sink);

    if (o.out == "-") {
      write_sweep_csv(out, rows);
    } else {
      auto file = detail::open_output(o.out);
      write_sweep_csv(file, rows);
      detail::finish(file, o.out);
    }
    if (trial_file) detail::finish(*trial_file, o.trial_log);
  });
}

struct OracleOptions {
  std::uint64_t n = 0, m = 0, k = 0;
  std::string event = "connected";
};

inline int run_oracle(const OracleOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Event event = parse_event(o.event);
    const Rational p = brute_force_probability(o.n, o.m, o.k, event);
    Json j;
    j["n"] = o.n;
    j["m"] = o.m;
    j["k"] = o.k;
    j["event"] = std::string(to_string(event));
    j["probability"] = to_fraction_string(p);
    j["decimal"] = p.convert_to<double>();
    out << j.dump() << '\n';
  });
}

}  // namespace urig::cli
