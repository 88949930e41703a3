#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cminer/oas/endpoint_spec.hpp"

namespace cminer::doc {

/// Counts of parameter-name mentions across descriptions: cell(i, j) is how
/// often parameter j's name occurs in parameter i's description.
class CooccurrenceMatrix {
 public:
  explicit CooccurrenceMatrix(std::vector<std::string> params);

  const std::vector<std::string>& params() const { return params_; }
  int at(size_t i, size_t j) const { return cells_[i * params_.size() + j]; }
  void add(size_t i, size_t j, int count) { cells_[i * params_.size() + j] += count; }
  int symmetrized(size_t i, size_t j) const { return at(i, j) + at(j, i); }

  /// Per-parameter total over the symmetrized view, diagonal excluded.
  std::vector<long> totals() const;

 private:
  std::vector<std::string> params_;
  std::vector<int> cells_;
};

/// Word-boundary, case-sensitive matching of each parameter's name (last
/// path segment) inside every other parameter's description.
CooccurrenceMatrix buildCooccurrence(const oas::EndpointSpec& e);

/// Counts word-boundary occurrences of `word` in `text`.
int countMentions(const std::string& text, const std::string& word);

/// describing path -> set of (enum owner path, literal) found verbatim in
/// that description.
using MarkedValues = std::map<std::string, std::set<std::pair<std::string, logic::Literal>>>;

MarkedValues markValues(const oas::EndpointSpec& e);

/// A pair of parameters hypothesized to be constraint-related, with any enum
/// values their descriptions mention.
struct Candidate {
  std::vector<std::string> paths;  // sorted, size 2
  std::map<std::string, std::vector<logic::Literal>> markedValues;
};

/// Pairs with a nonzero symmetrized cell, after dropping parameters whose
/// total co-occurrence exceeds frequencyFactor times the mean nonzero total.
std::vector<Candidate> candidates(const oas::EndpointSpec& e, double frequencyFactor = 2.0);

nlohmann::json candidatesToJson(const std::vector<Candidate>& cs);
std::vector<Candidate> candidatesFromJson(const nlohmann::json& doc);

}  // namespace cminer::doc
