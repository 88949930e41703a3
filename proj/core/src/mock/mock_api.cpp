#include "cminer/mock/mock_api.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "cminer/logic/dsl.hpp"

namespace cminer::mock {

using nlohmann::json;

LoadedScenario loadScenario(const std::string& configPath) {
  std::ifstream in(configPath);
  if (!in) throw ScenarioError("cannot open scenario config " + configPath);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid scenario config: ") + e.what());
  }

  const auto base = std::filesystem::path(configPath).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  LoadedScenario out;
  out.scenario.spec = oas::loadSpecFile(resolve(doc.at("spec").get<std::string>()));
  out.scenario.failureStatus = doc.value("failureStatus", 422);
  out.port = doc.value("port", 8642);

  const std::string gtPath = resolve(doc.at("constraints").get<std::string>());
  std::ifstream gt(gtPath);
  if (!gt) throw ScenarioError("cannot open constraint file " + gtPath);
  std::ostringstream buf;
  buf << gt.rdbuf();

  std::set<std::string> catalog;
  for (const auto& [path, p] : out.scenario.spec.flatIndex()) catalog.insert(path);
  out.scenario.constraints =
      logic::parseDsl(buf.str(), &catalog, logic::Origin::GroundTruth, gtPath);

  for (const logic::Constraint& c : out.scenario.constraints) {
    if (c.partial())
      throw ScenarioError("scenario constraints must not contain unparsed atoms (" +
                          c.sourceRef + ")");
  }
  return out;
}

logic::Assignment bodyAssignment(const oas::EndpointSpec& spec, const json& body) {
  logic::Assignment a;
  for (const auto& [path, p] : spec.flatIndex()) {
    const json* node = oas::findAtPath(body, path);
    if (!node || node->is_null()) {
      a.values.emplace(path, logic::Absent{});
    } else {
      a.values.emplace(path, oas::assignedFromJson(*node));
    }
  }
  return a;
}

namespace {

bool typeMatches(oas::DataType t, const json& v) {
  switch (t) {
    case oas::DataType::String: return v.is_string();
    case oas::DataType::Integer: return v.is_number_integer();
    case oas::DataType::Number: return v.is_number();
    case oas::DataType::Boolean: return v.is_boolean();
    case oas::DataType::Array: return v.is_array();
    case oas::DataType::Object: return v.is_object();
  }
  return false;
}

}  // namespace

int validateRequest(const Scenario& s, const std::string& bodyText) {
  json body;
  try {
    body = json::parse(bodyText);
  } catch (const json::parse_error&) {
    return 400;
  }
  if (!body.is_object()) return 400;

  // Declared types are part of the contract: a present value of the wrong
  // JSON kind fails like any other violated constraint.
  for (const auto& [path, p] : s.spec.flatIndex()) {
    const json* node = oas::findAtPath(body, path);
    if (node && !node->is_null() && !typeMatches(p->dataType, *node))
      return s.failureStatus;
  }

  const logic::Assignment point = bodyAssignment(s.spec, body);
  for (const logic::Constraint& c : s.constraints) {
    if (logic::evaluateUnder(c.precondition, point)) return s.failureStatus;
  }
  return 200;
}

struct MockServer::Impl {
  httplib::Server server;
  std::thread thread;
  Scenario scenario;
  std::atomic<bool> running{false};
};

MockServer::MockServer() : impl_(std::make_unique<Impl>()) {}

MockServer::~MockServer() { stop(); }

int MockServer::start(Scenario scenario, int port) {
  impl_->scenario = std::move(scenario);
  const std::string route = impl_->scenario.spec.endpointPath;

  impl_->server.Post(route, [this](const httplib::Request& req, httplib::Response& res) {
    const int status = validateRequest(impl_->scenario, req.body);
    res.status = status;
    if (status == 200) {
      res.set_content("{\"resultCode\":\"Authorised\"}", "application/json");
    } else if (status == 400) {
      res.set_content("{\"error\":\"malformed JSON\"}", "application/json");
    } else {
      res.set_content("{\"error\":\"constraint violation\"}", "application/json");
    }
  });

  int boundPort = port;
  if (port == 0) {
    boundPort = impl_->server.bind_to_any_port("0.0.0.0");
    if (boundPort <= 0) throw ScenarioError("failed to bind mock server");
  } else {
    if (!impl_->server.bind_to_port("0.0.0.0", port))
      throw ScenarioError("failed to bind mock server to port " + std::to_string(port));
  }

  impl_->running = true;
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return boundPort;
}

void MockServer::stop() {
  if (!impl_ || !impl_->running.exchange(false)) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

bool MockServer::running() const { return impl_ && impl_->running; }

}  // namespace cminer::mock
