#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cminer/doc/candidates.hpp"
#include "cminer/logic/domain.hpp"

namespace cminer::probe {

struct ProbeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered states for one parameter: absent first, then the probe values
/// (marked enum values when any, otherwise the type default). Values are
/// JSON so object parameters can probe as whole subtrees.
struct StateSet {
  std::string path;
  std::vector<nlohmann::json> values;

  size_t stateCount() const { return values.size() + 1; }
};

enum class RowResult { Pending, Success, Failure, Error };

struct TableRow {
  std::vector<size_t> stateIndex;  // 0 = absent, i >= 1 = values[i-1]
  RowResult result = RowResult::Pending;
  std::string errorText;
};

/// Full combination table for one candidate: the Cartesian product of every
/// parameter's states, one probe result per row.
struct ObservationTable {
  doc::Candidate candidate;
  std::vector<StateSet> stateSets;
  std::vector<TableRow> rows;

  /// Row's grounding point for evaluating template preconditions.
  logic::Assignment rowAssignment(const TableRow& row) const;
};

/// Enumerates all state combinations in lexicographic order over state
/// indices. Rejects candidates with fewer than two parameters.
ObservationTable enumerateRows(const doc::Candidate& c, const oas::EndpointSpec& e,
                               const oas::Overrides& overrides = {});

/// Applies one row to the base request: absent states remove the path (and
/// any emptied ancestors), value states set the literal.
nlohmann::json buildRequest(const nlohmann::json& base, const ObservationTable& table,
                            const TableRow& row);

/// CSV dump: one column per parameter path plus `result`.
std::string tableCsv(const ObservationTable& table);

}  // namespace cminer::probe
