#pragma once

#include <map>
#include <string>
#include <vector>

namespace cminer::analysis {

/// How a configured common method is interpreted by the guard parser.
enum class CommonMethod { Equals, Length, IsEmpty, Contains, StartsWith };

struct AnalysisConfig {
  std::vector<std::string> controllers;    // "Class.method" entry points
  std::vector<std::string> requestModels;  // deserialization targets
  std::vector<std::string> invalidStatePatterns{"addError"};
  int maxDepth = 15;
  std::map<std::string, CommonMethod> commonMethods = defaultCommonMethods();

  static std::map<std::string, CommonMethod> defaultCommonMethods();
};

/// Reads the analysis config JSON ({controllers, requestModels,
/// invalidStatePatterns, maxDepth, commonMethods}); missing keys keep the
/// shipped defaults.
AnalysisConfig loadAnalysisConfig(const std::string& path);
AnalysisConfig parseAnalysisConfig(const std::string& jsonText);

}  // namespace cminer::analysis
