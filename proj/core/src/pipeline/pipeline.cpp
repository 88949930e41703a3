#include "cminer/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cminer/analysis/analyzer.hpp"
#include "cminer/doc/candidates.hpp"
#include "cminer/mock/mock_api.hpp"
#include "cminer/probe/prober.hpp"
#include "cminer/scoring/report.hpp"

namespace cminer::pipeline {

namespace fs = std::filesystem;

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFile(const std::string& path, const std::string& content) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

namespace {

void requireField(const std::string& value, const std::string& flag,
                  const std::string& command) {
  if (value.empty())
    throw ConfigError("'" + command + "' requires " + flag);
}

std::string outPath(const RunConfig& cfg, const char* name) {
  return (fs::path(cfg.outDir) / name).string();
}

struct ProbeSetup {
  oas::Overrides overrides;
  std::vector<std::string> extraPaths;
  probe::Headers headers;
};

ProbeSetup loadProbeSetup(const RunConfig& cfg) {
  ProbeSetup setup;
  if (!cfg.configPath.empty()) {
    nlohmann::json doc = nlohmann::json::parse(readFile(cfg.configPath));
    if (doc.contains("overrides")) {
      for (auto it = doc["overrides"].begin(); it != doc["overrides"].end(); ++it)
        setup.overrides[it.key()] = oas::jsonToLiteral(it.value());
    }
    for (const auto& p : doc.value("extraPaths", nlohmann::json::array()))
      setup.extraPaths.push_back(p.get<std::string>());
    if (doc.contains("headers")) {
      for (auto it = doc["headers"].begin(); it != doc["headers"].end(); ++it)
        setup.headers.emplace_back(it.key(), it.value().get<std::string>());
    }
  }
  if (!cfg.authHeader.empty()) setup.headers.emplace_back("Authorization", cfg.authHeader);
  return setup;
}

}  // namespace

int runMineDocs(const RunConfig& cfg, std::ostream& log) {
  requireField(cfg.specPath, "--spec", "mine-docs");
  requireField(cfg.outDir, "--out", "mine-docs");
  if (cfg.frequencyFactor <= 0) throw ConfigError("--freq-factor must be positive");

  const oas::EndpointSpec spec = oas::loadSpecFile(cfg.specPath);
  const std::vector<doc::Candidate> cands = doc::candidates(spec, cfg.frequencyFactor);
  writeFile(outPath(cfg, kCandidatesFile), doc::candidatesToJson(cands).dump(2) + "\n");
  log << "mine-docs: " << cands.size() << " candidate(s) from "
      << spec.parameterCount() << " parameters\n";
  return 0;
}

int runProbe(const RunConfig& cfg, std::ostream& log) {
  requireField(cfg.specPath, "--spec", "probe");
  requireField(cfg.target, "--target", "probe");
  requireField(cfg.outDir, "--out", "probe");

  const std::string candidatesPath = outPath(cfg, kCandidatesFile);
  if (!fs::exists(candidatesPath))
    throw ConfigError("probe expects " + candidatesPath + "; run mine-docs first");

  const oas::EndpointSpec spec = oas::loadSpecFile(cfg.specPath);
  const auto cands =
      doc::candidatesFromJson(nlohmann::json::parse(readFile(candidatesPath)));
  const ProbeSetup setup = loadProbeSetup(cfg);

  probe::ProbeSession session;
  session.endpointPath = spec.endpointPath;
  session.baseRequest = oas::buildBaseRequest(spec, setup.overrides, setup.extraPaths);
  session.headers = setup.headers;
  session.rateLimit = cfg.rateLimit;

  auto client = probe::makeHttplibClient(cfg.target);

  std::vector<logic::Constraint> inferred;
  nlohmann::json diagnostics = nlohmann::json::array();
  for (const doc::Candidate& c : cands) {
    probe::ObservationTable table = probe::enumerateRows(c, spec, setup.overrides);
    probe::runProbe(table, *client, session);

    std::string tableName = "tables/";
    for (size_t i = 0; i < c.paths.size(); ++i) {
      if (i) tableName += "__";
      tableName += c.paths[i];
    }
    tableName += ".csv";
    writeFile(outPath(cfg, tableName.c_str()), probe::tableCsv(table));

    const probe::FitResult fit = probe::fitTemplates(table);
    for (const logic::Constraint& k : fit.constraints) {
      log << "probe: inferred " << logic::printConstraint(k) << "\n";
      inferred.push_back(k);
    }
    for (const std::string& d : fit.diagnostics) {
      log << "probe: " << d << "\n";
      diagnostics.push_back(d);
    }
  }

  writeFile(outPath(cfg, kDocConstraintsFile), logic::printConstraints(inferred));
  writeFile(outPath(cfg, kProbeDiagnosticsFile), diagnostics.dump(2) + "\n");
  log << "probe: " << inferred.size() << " constraint(s) from " << cands.size()
      << " candidate(s)\n";
  return 0;
}

int runAnalyzeCode(const RunConfig& cfg, std::ostream& log) {
  requireField(cfg.srcDir, "--src", "analyze-code");
  requireField(cfg.configPath, "--config", "analyze-code");
  requireField(cfg.specPath, "--spec", "analyze-code");
  requireField(cfg.outDir, "--out", "analyze-code");

  analysis::AnalysisConfig config = analysis::loadAnalysisConfig(cfg.configPath);
  if (cfg.maxDepth >= 0) config.maxDepth = cfg.maxDepth;

  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(cfg.srcDir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mj")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no .mj sources under " + cfg.srcDir);

  std::vector<lang::Unit> units;
  for (const std::string& f : files) units.push_back(lang::parseUnit(readFile(f), f));

  lang::ResolveConfig rc;
  rc.controllers = config.controllers;
  rc.requestModels = config.requestModels;
  const lang::Program program = lang::resolveProgram(std::move(units), rc);

  const oas::EndpointSpec spec = oas::loadSpecFile(cfg.specPath);

  std::vector<logic::Constraint> all;
  nlohmann::json diagnostics = nlohmann::json::array();
  analysis::Analyzer analyzer(program, &spec, config);
  for (const std::string& controller : config.controllers) {
    analysis::AnalysisResult result = analyzer.analyzeController(controller);
    for (logic::Constraint& c : result.constraints) all.push_back(std::move(c));
    for (const auto& d : analysis::diagnosticsToJson(result.diagnostics))
      diagnostics.push_back(d);
    log << "analyze-code: " << controller << ": " << result.constraints.size()
        << " constraint(s), " << result.diagnostics.size() << " diagnostic(s)\n";
  }

  writeFile(outPath(cfg, kCodeConstraintsFile), logic::printConstraints(all));
  writeFile(outPath(cfg, kUnparsedDiagnosticsFile), diagnostics.dump(2) + "\n");
  return 0;
}

int runCombine(const RunConfig& cfg, std::ostream& log) {
  requireField(cfg.outDir, "--out", "combine");
  const std::string codePath = outPath(cfg, kCodeConstraintsFile);
  const std::string docPath = outPath(cfg, kDocConstraintsFile);
  if (!fs::exists(codePath) && !fs::exists(docPath))
    throw ConfigError("combine expects " + codePath + " and/or " + docPath);

  std::vector<logic::Constraint> merged;
  auto loadInto = [&](const std::string& path, logic::Origin origin) {
    if (!fs::exists(path)) return;
    for (logic::Constraint& c : logic::parseDsl(readFile(path), nullptr, origin, path))
      merged.push_back(std::move(c));
  };
  loadInto(codePath, logic::Origin::Code);
  loadInto(docPath, logic::Origin::Doc);

  std::vector<logic::Constraint> complete;
  std::vector<logic::Constraint> partial;
  for (logic::Constraint& c : merged)
    (c.partial() ? partial : complete).push_back(std::move(c));

  const logic::Domain domain = logic::Domain::forConstraints(complete);
  std::vector<logic::Constraint> kept;
  size_t overlap = 0;
  for (logic::Constraint& c : complete) {
    const bool dup =
        std::any_of(kept.begin(), kept.end(), [&](const logic::Constraint& k) {
          return logic::equivalent(k, c, domain);
        });
    if (dup) {
      ++overlap;
      continue;
    }
    kept.push_back(std::move(c));
  }
  std::set<std::string> seenPartial;
  for (logic::Constraint& c : partial) {
    if (seenPartial.insert(functionalForm(normalize(c.precondition))).second)
      kept.push_back(std::move(c));
  }

  writeFile(outPath(cfg, kCombinedFile), logic::printConstraints(kept));
  log << "combine: " << kept.size() << " constraint(s), " << overlap
      << " overlapping between pipelines\n";
  return 0;
}

int runEvaluate(const RunConfig& cfg, std::ostream& log) {
  requireField(cfg.truthPath, "--truth", "evaluate");
  requireField(cfg.outDir, "--out", "evaluate");

  std::string identifiedPath = cfg.identifiedPath;
  if (identifiedPath.empty()) {
    for (const char* name : {kCombinedFile, kCodeConstraintsFile, kDocConstraintsFile}) {
      if (fs::exists(outPath(cfg, name))) {
        identifiedPath = outPath(cfg, name);
        break;
      }
    }
    if (identifiedPath.empty())
      throw ConfigError("evaluate found no constraints file under " + cfg.outDir +
                        "; pass one explicitly");
  }
  if (!fs::exists(cfg.truthPath))
    throw ConfigError("ground-truth file not found: " + cfg.truthPath);

  const std::vector<logic::Constraint> truth = scoring::loadGroundTruth(cfg.truthPath);
  const std::vector<logic::Constraint> identified = logic::parseDsl(
      readFile(identifiedPath), nullptr, logic::Origin::Code, identifiedPath);

  std::vector<logic::Constraint> domainSeed = truth;
  for (const logic::Constraint& c : identified)
    if (!c.partial()) domainSeed.push_back(c);
  const logic::Domain domain = logic::Domain::forConstraints(domainSeed);

  const scoring::EvaluationReport report =
      scoring::matchConstraints(identified, truth, domain);

  writeFile(outPath(cfg, kEvaluationJsonFile),
            scoring::reportToJson(report).dump(2) + "\n");
  const std::string endpoint = fs::path(cfg.truthPath).stem().string();
  const std::string table = scoring::reportTable(endpoint, report);
  writeFile(outPath(cfg, kEvaluationTableFile), table);
  log << table;
  return 0;
}

long runEstimateBudget(const RunConfig& cfg) {
  if (cfg.params < 1) throw ConfigError("estimate-budget requires --params >= 1");
  return probe::estimateBudget(cfg.params);
}

namespace {
std::atomic<bool> g_stopRequested{false};
void handleStopSignal(int) { g_stopRequested = true; }
}  // namespace

int runServeMock(const RunConfig& cfg, std::ostream& log) {
  requireField(cfg.target, "--target (scenario config)", "serve-mock");
  mock::LoadedScenario loaded = mock::loadScenario(cfg.target);

  mock::MockServer server;
  const int port = server.start(std::move(loaded.scenario), loaded.port);
  log << "serve-mock: listening on port " << port << "\n";

  g_stopRequested = false;
  std::signal(SIGINT, handleStopSignal);
  std::signal(SIGTERM, handleStopSignal);
  while (!g_stopRequested && server.running())
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  server.stop();
  log << "serve-mock: stopped\n";
  return 0;
}

}  // namespace cminer::pipeline
