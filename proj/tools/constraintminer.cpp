// constraintminer: infers single- and inter-parameter constraints of web API
// endpoints from their machine-readable spec (mine-docs + probe), from
// server-side source (analyze-code), and scores the result against a ground
// truth (evaluate). serve-mock runs a deterministic target API for probing.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cminer/pipeline/pipeline.hpp"

using cminer::pipeline::RunConfig;

namespace {

void addCommonFlags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--spec", cfg.specPath, "Endpoint spec (.oas.json)");
  cmd->add_option("--src", cfg.srcDir, "Directory of .mj sources");
  cmd->add_option("--config", cfg.configPath, "Analysis or probe config (JSON)");
  cmd->add_option("--truth", cfg.truthPath, "Ground-truth DSL file (.gt)");
  cmd->add_option("--target", cfg.target, "Target base URL, or scenario config for serve-mock");
  cmd->add_option("--out", cfg.outDir, "Artifact output directory");
  cmd->add_option("--rate", cfg.rateLimit, "Probe rate limit (requests/second)")
      ->default_val(5.0);
  cmd->add_option("--freq-factor", cfg.frequencyFactor,
                  "Co-occurrence frequency filter factor")
      ->default_val(2.0);
  cmd->add_option("--max-depth", cfg.maxDepth, "Interprocedural depth limit");
  cmd->add_option("--params", cfg.params, "Parameter count for estimate-budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constraintminer: web API parameter-constraint inference"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* auth = std::getenv("CONSTRAINTMINER_AUTH")) cfg.authHeader = auth;

  CLI::App* mineDocs = app.add_subcommand(
      "mine-docs", "Mine parameter descriptions for constraint candidates");
  CLI::App* probe = app.add_subcommand(
      "probe", "Validate candidates against a live target API");
  CLI::App* analyzeCode = app.add_subcommand(
      "analyze-code", "Extract constraints from server-side source");
  CLI::App* combine = app.add_subcommand(
      "combine", "Union and deduplicate doc- and code-derived constraints");
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Score identified constraints against a ground truth");
  CLI::App* serveMock = app.add_subcommand(
      "serve-mock", "Serve a constraint-enforcing mock API");
  CLI::App* estimateBudget = app.add_subcommand(
      "estimate-budget", "Request count needed to validate candidate pairs");

  for (CLI::App* cmd :
       {mineDocs, probe, analyzeCode, combine, evaluate, serveMock, estimateBudget})
    addCommonFlags(cmd, cfg);
  evaluate->add_option("identified", cfg.identifiedPath,
                       "Constraints file to score (defaults to --out artifacts)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mineDocs->parsed()) return cminer::pipeline::runMineDocs(cfg, std::cout);
    if (probe->parsed()) return cminer::pipeline::runProbe(cfg, std::cout);
    if (analyzeCode->parsed()) return cminer::pipeline::runAnalyzeCode(cfg, std::cout);
    if (combine->parsed()) return cminer::pipeline::runCombine(cfg, std::cout);
    if (evaluate->parsed()) return cminer::pipeline::runEvaluate(cfg, std::cout);
    if (serveMock->parsed()) return cminer::pipeline::runServeMock(cfg, std::cout);
    if (estimateBudget->parsed()) {
      std::cout << cminer::pipeline::runEstimateBudget(cfg) << "\n";
      return 0;
    }
  } catch (const cminer::pipeline::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
