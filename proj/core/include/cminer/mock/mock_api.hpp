#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cminer/logic/constraint.hpp"
#include "cminer/logic/domain.hpp"
#include "cminer/oas/endpoint_spec.hpp"

namespace cminer::mock {

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A declared endpoint plus the constraint set the mock service enforces.
struct Scenario {
  oas::EndpointSpec spec;
  std::vector<logic::Constraint> constraints;
  int failureStatus = 422;

  Scenario() = default;
  Scenario(Scenario&&) = default;
  Scenario& operator=(Scenario&&) = default;
};

/// Scenario config file: {"spec": <.oas.json path>, "constraints": <.gt
/// path>, "failureStatus": 422, "port": 8642}. Relative paths resolve
/// against the config file's directory.
struct LoadedScenario {
  Scenario scenario;
  int port = 8642;
};
LoadedScenario loadScenario(const std::string& configPath);

/// Grounding point of a request body: a path is present iff the body holds a
/// value there.
logic::Assignment bodyAssignment(const oas::EndpointSpec& spec, const nlohmann::json& body);

/// 400 for malformed JSON, failureStatus when any constraint precondition
/// holds or a present value's JSON kind contradicts the declared type,
/// otherwise 200.
int validateRequest(const Scenario& s, const std::string& bodyText);

/// Serves the scenario's endpoint over HTTP/1.1; concurrent POSTs allowed,
/// scenario immutable while serving.
class MockServer {
 public:
  MockServer();
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  /// Binds and serves on a background thread; port 0 picks a free port.
  /// Returns the bound port.
  int start(Scenario scenario, int port);
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cminer::mock
