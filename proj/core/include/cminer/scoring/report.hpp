#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cminer/logic/domain.hpp"
#include "cminer/logic/dsl.hpp"

namespace cminer::scoring {

struct MatchedPair {
  logic::Constraint identified;
  logic::Constraint truth;
};

struct ClassCounts {
  int matched = 0;
  int missed = 0;
  int spurious = 0;
  int truthTotal = 0;
  int identifiedTotal = 0;  // decomposed, manual-review excluded
};

/// Decomposed-match outcome: every truth constraint matched at most once,
/// matched + missed = decomposed truth count; identified constraints with
/// unparsed fragments sit in the manual-review bucket.
struct EvaluationReport {
  std::vector<MatchedPair> matches;
  std::vector<logic::Constraint> missed;
  std::vector<logic::Constraint> spurious;
  std::vector<logic::Constraint> manualReview;
  ClassCounts inter;
  ClassCounts single;
  ClassCounts combined;
};

struct Metrics {
  double interRecall = 1.0;
  double interPrecision = 1.0;
  double singleRecall = 1.0;
  double singlePrecision = 1.0;
  double combinedRecall = 1.0;
  double combinedPrecision = 1.0;
};

/// Ground truth loader: DSL file with optional @class/@cat labels; rejects
/// constraints carrying unparsed atoms.
std::vector<logic::Constraint> loadGroundTruth(const std::string& path);

/// Greedy one-to-one matching by logical equivalence after both sides are
/// decomposed. Truth constraints match in file order; identified candidates
/// are tried in normalized-form lexicographic order.
EvaluationReport matchConstraints(std::span<const logic::Constraint> identified,
                                  std::span<const logic::Constraint> truth,
                                  const logic::Domain& domain);

/// recall = matched / decomposed truth; precision = matched / (decomposed
/// identified minus manual review). Empty denominators count as 1.0.
Metrics metrics(const EvaluationReport& report);
double ratioOrOne(int numerator, int denominator);

nlohmann::json reportToJson(const EvaluationReport& report);

/// Human-readable table in the shape Endpoint | Identified | Total | FP.
std::string reportTable(const std::string& endpoint, const EvaluationReport& report);

}  // namespace cminer::scoring
