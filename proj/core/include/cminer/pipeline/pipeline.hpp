#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

namespace cminer::pipeline {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shared run configuration; each command validates the subset it needs.
struct RunConfig {
  std::string specPath;        // --spec   endpoint .oas.json
  std::string srcDir;          // --src    directory of .mj sources
  std::string configPath;      // --config analysis config / probe config
  std::string truthPath;       // --truth  ground-truth .gt
  std::string target;          // --target base URL (probe) or scenario file (serve-mock)
  std::string outDir;          // --out    artifact directory
  std::string identifiedPath;  // evaluate: constraints file to score
  double rateLimit = 5.0;      // --rate
  double frequencyFactor = 2.0;  // --freq-factor
  int maxDepth = -1;           // --max-depth (-1: keep analysis-config value)
  long params = 0;             // --params (estimate-budget)
  std::string authHeader;      // CONSTRAINTMINER_AUTH passthrough
};

// Artifact names within --out.
inline constexpr const char* kCandidatesFile = "candidates.json";
inline constexpr const char* kDocConstraintsFile = "doc-constraints.gt";
inline constexpr const char* kCodeConstraintsFile = "code-constraints.gt";
inline constexpr const char* kCombinedFile = "combined.gt";
inline constexpr const char* kUnparsedDiagnosticsFile = "unparsed-diagnostics.json";
inline constexpr const char* kProbeDiagnosticsFile = "probe-diagnostics.json";
inline constexpr const char* kEvaluationJsonFile = "evaluation.json";
inline constexpr const char* kEvaluationTableFile = "evaluation.txt";

int runMineDocs(const RunConfig& cfg, std::ostream& log);
int runProbe(const RunConfig& cfg, std::ostream& log);
int runAnalyzeCode(const RunConfig& cfg, std::ostream& log);
int runCombine(const RunConfig& cfg, std::ostream& log);
int runEvaluate(const RunConfig& cfg, std::ostream& log);
long runEstimateBudget(const RunConfig& cfg);
/// Blocks until SIGINT/SIGTERM.
int runServeMock(const RunConfig& cfg, std::ostream& log);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

}  // namespace cminer::pipeline
