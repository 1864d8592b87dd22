#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "urig/cli.hpp"

int main(int argc, char** argv) {
  using namespace urig::cli;

  CLI::App app{"Uniform random intersection graph toolkit"};
  app.require_subcommand(1);

  // --seed is accepted everywhere; only gen and sweep consume it.
  std::uint64_t unused_seed = 0;

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample a key-ring table for G(n,m,k)");
  gen_cmd->add_option("--n", gen.n, "Number of vertices")->required();
  gen_cmd->add_option("--m", gen.m, "Colour-pool size")->required();
  gen_cmd->add_option("--k", gen.k, "Key-ring size")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output table file")->required();

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Component report for a table file");
  analyze_cmd->add_option("--in", analyze.in, "Input table file")->required();
  analyze_cmd->add_flag("--colour-graph", analyze.colour_graph,
                        "Also analyse the k=2 colour graph");
  analyze_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  ProbOptions prob;
  auto* prob_cmd = app.add_subcommand("prob", "Closed-form probabilities and threshold report");
  prob_cmd->add_option("--n", prob.n)->required();
  prob_cmd->add_option("--m", prob.m)->required();
  prob_cmd->add_option("--k", prob.k)->required();
  prob_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Smallest key-ring size above the threshold");
  plan_cmd->add_option("--n", plan.n)->required();
  plan_cmd->add_option("--m", plan.m)->required();
  plan_cmd->add_option("--margin", plan.margin, "Required multiple of ln n")->default_val(1.0);
  plan_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  SweepOptions sweep;
  std::uint64_t sweep_seed = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over a parameter grid");
  sweep_cmd->add_option("--config", sweep.config, "Sweep configuration (JSON)")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV ('-' for stdout)")->default_val("-");
  sweep_cmd->add_option("--trial-log", sweep.trial_log, "Per-trial CSV output");
  auto* sweep_seed_opt =
      sweep_cmd->add_option("--seed", sweep_seed, "Override the config's master_seed");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)")
      ->default_val(1);

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact probability by full enumeration");
  oracle_cmd->add_option("--n", oracle.n)->required();
  oracle_cmd->add_option("--m", oracle.m)->required();
  oracle_cmd->add_option("--k", oracle.k)->required();
  oracle_cmd->add_option("--event", oracle.event, "connected | has_isolated")
      ->default_val("connected");
  oracle_cmd->add_option("--seed", unused_seed, "Accepted for uniformity; unused");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  if (*gen_cmd) return run_gen(gen, std::cout, std::cerr);
  if (*analyze_cmd) return run_analyze(analyze, std::cout, std::cerr);
  if (*prob_cmd) return run_prob(prob, std::cout, std::cerr);
  if (*plan_cmd) return run_plan(plan, std::cout, std::cerr);
  if (*sweep_cmd) {
    if (*sweep_seed_opt) sweep.seed = sweep_seed;
    return run_sweep_command(sweep, std::cout, std::cerr);
  }
  if (*oracle_cmd) return run_oracle(oracle, std::cout, std::cerr);
  return kExitDomain;
}
