#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cminer/logic/dsl.hpp"
#include "cminer/mock/mock_api.hpp"
#include "cminer/pipeline/pipeline.hpp"

namespace pipeline = cminer::pipeline;
namespace mock = cminer::mock;
namespace logic = cminer::logic;
namespace fs = std::filesystem;

namespace {

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cminer_pipeline_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    out << content;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream log_;
};

const char* kE2eSpec = R"({
  "endpoint": "/payments",
  "schema": {
    "properties": {
      "amount": {
        "type": "object",
        "description": "The payment amount.",
        "properties": {"value": {"type": "integer"}, "currency": {"type": "string"}},
        "required": ["value", "currency"]
      },
      "bankAccount": {
        "type": "object",
        "description": "The bank account details. Either bankAccount or card is required.",
        "properties": {"iban": {"type": "string"}}
      },
      "card": {
        "type": "object",
        "description": "The card details. Either bankAccount or card is required.",
        "properties": {"number": {"type": "string"}}
      },
      "paymentMethod": {
        "type": "object",
        "properties": {
          "type": {
            "type": "string",
            "enum": ["iDEAL", "scheme"],
            "description": "The payment method type. For iDEAL payments a returnUrl must also be provided."
          }
        }
      },
      "returnUrl": {"type": "string", "description": "Where the shopper returns after redirection."}
    },
    "required": ["amount"]
  }
})";

const char* kE2eTruth =
    "not present(bankAccount) and not present(card) -> invalid\n"
    "paymentMethod.type == \"iDEAL\" and not present(returnUrl) -> invalid\n";

}  // namespace

TEST_F(PipelineTest, MineDocsWritesCandidates) {
  pipeline::RunConfig cfg;
  cfg.specPath = write("payments.oas.json", kE2eSpec);
  cfg.outDir = path("out");
  EXPECT_EQ(pipeline::runMineDocs(cfg, log_), 0);

  const auto doc = nlohmann::json::parse(pipeline::readFile(path("out/candidates.json")));
  ASSERT_EQ(doc.size(), 2u);
}

TEST_F(PipelineTest, MineDocsValidatesConfig) {
  pipeline::RunConfig cfg;
  cfg.outDir = path("out");
  EXPECT_THROW(pipeline::runMineDocs(cfg, log_), pipeline::ConfigError);
}

TEST_F(PipelineTest, ProbeAgainstMockInfersBothConstraints) {
  const std::string specPath = write("payments.oas.json", kE2eSpec);
  write("scenario.gt", kE2eTruth);
  write("scenario.json",
        R"({"spec": "payments.oas.json", "constraints": "scenario.gt"})");

  mock::MockServer server;
  mock::LoadedScenario loaded = mock::loadScenario(path("scenario.json"));
  const int port = server.start(std::move(loaded.scenario), 0);

  pipeline::RunConfig cfg;
  cfg.specPath = specPath;
  cfg.outDir = path("out");
  cfg.target = "http://localhost:" + std::to_string(port);
  cfg.rateLimit = 1000;  // unit tests skip pacing; the acceptance run uses 5
  cfg.configPath = write("probe.json", R"({"extraPaths": ["card"]})");

  ASSERT_EQ(pipeline::runMineDocs(cfg, log_), 0);
  ASSERT_EQ(pipeline::runProbe(cfg, log_), 0);

  const auto inferred =
      logic::parseDsl(pipeline::readFile(path("out/doc-constraints.gt")));
  const auto truth = logic::parseDsl(kE2eTruth);
  ASSERT_EQ(inferred.size(), 2u);

  std::vector<logic::Constraint> seed = truth;
  seed.insert(seed.end(), inferred.begin(), inferred.end());
  const logic::Domain d = logic::Domain::forConstraints(seed);
  for (const auto& t : truth) {
    bool matched = false;
    for (const auto& i : inferred) matched = matched || logic::equivalent(i, t, d);
    EXPECT_TRUE(matched) << logic::printConstraint(t);
  }

  // Tables were dumped, one per candidate.
  EXPECT_TRUE(fs::exists(path("out/tables/bankAccount__card.csv")));
  EXPECT_TRUE(fs::exists(path("out/tables/paymentMethod.type__returnUrl.csv")));

  server.stop();
}

TEST_F(PipelineTest, ProbeRequiresCandidatesArtifact) {
  pipeline::RunConfig cfg;
  cfg.specPath = write("payments.oas.json", kE2eSpec);
  cfg.outDir = path("out");
  cfg.target = "http://localhost:1";
  EXPECT_THROW(pipeline::runProbe(cfg, log_), pipeline::ConfigError);
}

TEST_F(PipelineTest, AnalyzeCodeWritesConstraintsAndDiagnostics) {
  write("src/controller.mj", R"(
class PaymentController {
  void handle(PaymentRequest request) {
    if (request.getCard() == null) {
      if (request.getBankAccount() == null) { throw new ApiException("either"); }
    }
    if (request.getOffset() > 80) { throw new ApiException("offset"); }
    if (mysteryCheck(request)) { throw new ApiException("mystery"); }
  }
}
class PaymentRequest { Card card; BankAccount bankAccount; int offset; }
class Card { String number; }
class BankAccount { String iban; }
)");
  write("analysis.json", R"({
    "controllers": ["PaymentController.handle"],
    "requestModels": ["PaymentRequest"]
  })");
  const std::string spec = write("ep.oas.json", R"({
    "endpoint": "/payments",
    "schema": {"properties": {
      "card": {"type": "object", "properties": {"number": {"type": "string"}}},
      "bankAccount": {"type": "object", "properties": {"iban": {"type": "string"}}},
      "offset": {"type": "integer"}
    }}
  })");

  pipeline::RunConfig cfg;
  cfg.srcDir = path("src");
  cfg.configPath = path("analysis.json");
  cfg.specPath = spec;
  cfg.outDir = path("out");
  ASSERT_EQ(pipeline::runAnalyzeCode(cfg, log_), 0);

  const auto constraints =
      logic::parseDsl(pipeline::readFile(path("out/code-constraints.gt")));
  EXPECT_EQ(constraints.size(), 3u);  // two parsed + one partial (mysteryCheck)

  const auto diags =
      nlohmann::json::parse(pipeline::readFile(path("out/unparsed-diagnostics.json")));
  bool sawUnparsed = false;
  for (const auto& d : diags)
    if (d["kind"] == "unparsed") sawUnparsed = true;
  EXPECT_TRUE(sawUnparsed);
}

TEST_F(PipelineTest, CombineUnionsAndDeduplicates) {
  // code = {c1, c2}, doc = {c2, c3} -> combined = {c1, c2, c3}.
  write("out/code-constraints.gt",
        "requires(A, B)\n"
        "not present(C) and not present(D) -> invalid\n");
  write("out/doc-constraints.gt",
        "not present(D) and not present(C) -> invalid\n"
        "offset > 80 -> invalid\n");
  pipeline::RunConfig cfg;
  cfg.outDir = path("out");
  ASSERT_EQ(pipeline::runCombine(cfg, log_), 0);
  const auto combined = logic::parseDsl(pipeline::readFile(path("out/combined.gt")));
  EXPECT_EQ(combined.size(), 3u);
  EXPECT_NE(log_.str().find("1 overlapping"), std::string::npos);
}

TEST_F(PipelineTest, EvaluateProducesReport) {
  write("out/combined.gt", "requires(A, B)\nrequires(B, A)\n");
  const std::string truth = write("truth.gt", "requires(A, B)\nrequires(C, D)\n");

  pipeline::RunConfig cfg;
  cfg.outDir = path("out");
  cfg.truthPath = truth;
  ASSERT_EQ(pipeline::runEvaluate(cfg, log_), 0);

  const auto report =
      nlohmann::json::parse(pipeline::readFile(path("out/evaluation.json")));
  EXPECT_EQ(report["classes"]["combined"]["matched"], 1);
  EXPECT_EQ(report["classes"]["combined"]["missed"], 1);
  EXPECT_EQ(report["classes"]["combined"]["spurious"], 1);
  EXPECT_TRUE(fs::exists(path("out/evaluation.txt")));
}

TEST_F(PipelineTest, EvaluateMissingTruthIsConfigError) {
  write("out/combined.gt", "requires(A, B)\n");
  pipeline::RunConfig cfg;
  cfg.outDir = path("out");
  cfg.truthPath = path("missing-truth.gt");
  EXPECT_THROW(pipeline::runEvaluate(cfg, log_), pipeline::ConfigError);
}

TEST_F(PipelineTest, EstimateBudget) {
  pipeline::RunConfig cfg;
  cfg.params = 371;
  EXPECT_EQ(pipeline::runEstimateBudget(cfg), 73458);
  cfg.params = 0;
  EXPECT_THROW(pipeline::runEstimateBudget(cfg), pipeline::ConfigError);
}

// Artifacts written by one command are readable by the next (composability).
TEST_F(PipelineTest, ArtifactsRoundTripThroughCommands) {
  write("out/code-constraints.gt", "requires(A, B)\n");
  write("out/doc-constraints.gt", "requires(A, B)\n");
  pipeline::RunConfig cfg;
  cfg.outDir = path("out");
  ASSERT_EQ(pipeline::runCombine(cfg, log_), 0);
  cfg.truthPath = write("truth.gt", "requires(A, B)\n");
  ASSERT_EQ(pipeline::runEvaluate(cfg, log_), 0);
  const auto report =
      nlohmann::json::parse(pipeline::readFile(path("out/evaluation.json")));
  EXPECT_EQ(report["classes"]["combined"]["matched"], 1);
  EXPECT_EQ(report["classes"]["combined"]["spurious"], 0);
}
