#pragma once

#include <cstdint>
#include <vector>

#include "cminer/logic/constraint.hpp"
#include "cminer/probe/http_client.hpp"
#include "cminer/probe/observation_table.hpp"

namespace cminer::probe {

struct ProbeSession {
  std::string endpointPath;
  nlohmann::json baseRequest;
  Headers headers;
  double rateLimit = 5.0;  // requests per second
};

/// Sends one request per row (sequentially, paced at the session rate) and
/// fills in results: 2xx success, anything else failure, transport problems
/// recorded per row.
void runProbe(ObservationTable& table, HttpClient& client, const ProbeSession& session);

struct FitResult {
  std::vector<logic::Constraint> constraints;
  std::vector<std::string> diagnostics;
};

/// Fits the pair templates (requires both ways, or-requires, exactly-one,
/// all-or-none, value-requires per marked value) against the observed
/// failures; emits the best template whose predicted failure rows equal the
/// observed ones exactly, or a diagnostic when none fits.
FitResult fitTemplates(const ObservationTable& table);

/// Appendix request-budget estimate: min(topK, P-1) * P * (valuesPerParam+1)^2.
std::int64_t estimateBudget(std::int64_t paramCount, std::int64_t topK = 22,
                            std::int64_t valuesPerParam = 2);

}  // namespace cminer::probe
