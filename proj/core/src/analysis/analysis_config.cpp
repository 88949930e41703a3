#include "cminer/analysis/analysis_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cminer::analysis {

std::map<std::string, CommonMethod> AnalysisConfig::defaultCommonMethods() {
  return {
      {"equals", CommonMethod::Equals},
      {"length", CommonMethod::Length},
      {"isEmpty", CommonMethod::IsEmpty},
      {"contains", CommonMethod::Contains},
      {"startsWith", CommonMethod::StartsWith},
  };
}

namespace {

CommonMethod parseCommonMethod(const std::string& kind) {
  if (kind == "equals") return CommonMethod::Equals;
  if (kind == "length") return CommonMethod::Length;
  if (kind == "isEmpty") return CommonMethod::IsEmpty;
  if (kind == "contains") return CommonMethod::Contains;
  if (kind == "startsWith") return CommonMethod::StartsWith;
  throw std::runtime_error("unknown common-method handler '" + kind + "'");
}

}  // namespace

AnalysisConfig parseAnalysisConfig(const std::string& jsonText) {
  nlohmann::json doc = nlohmann::json::parse(jsonText);
  AnalysisConfig cfg;
  for (const auto& c : doc.value("controllers", nlohmann::json::array()))
    cfg.controllers.push_back(c.get<std::string>());
  for (const auto& m : doc.value("requestModels", nlohmann::json::array()))
    cfg.requestModels.push_back(m.get<std::string>());
  if (doc.contains("invalidStatePatterns")) {
    cfg.invalidStatePatterns.clear();
    for (const auto& p : doc["invalidStatePatterns"])
      cfg.invalidStatePatterns.push_back(p.get<std::string>());
  }
  cfg.maxDepth = doc.value("maxDepth", 15);
  if (doc.contains("commonMethods")) {
    for (auto it = doc["commonMethods"].begin(); it != doc["commonMethods"].end(); ++it)
      cfg.commonMethods[it.key()] = parseCommonMethod(it.value().get<std::string>());
  }
  return cfg;
}

AnalysisConfig loadAnalysisConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open analysis config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseAnalysisConfig(buf.str());
}

}  // namespace cminer::analysis
