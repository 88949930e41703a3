#include <benchmark/benchmark.h>

#include <random>

#include "cminer/analysis/analyzer.hpp"
#include "cminer/logic/dsl.hpp"
#include "cminer/probe/prober.hpp"

namespace logic = cminer::logic;
namespace lang = cminer::lang;
namespace analysis = cminer::analysis;
namespace oas = cminer::oas;
namespace probe = cminer::probe;

namespace {

logic::Formula randomFormula(std::mt19937& rng, int depth) {
  const std::vector<std::string> paths{"a", "b", "c.d", "e"};
  if (depth == 0 || rng() % 3 == 0) {
    switch (rng() % 3) {
      case 0: return logic::Formula::leaf(logic::PresentAtom{paths[rng() % paths.size()]});
      case 1:
        return logic::Formula::leaf(
            logic::EqAtom{paths[rng() % paths.size()], std::string("NL")});
      default:
        return logic::Formula::leaf(logic::CmpAtom{
            paths[rng() % paths.size()], logic::CmpOp::Gt,
            static_cast<std::int64_t>(rng() % 100)});
    }
  }
  switch (rng() % 3) {
    case 0: return logic::Formula::negation(randomFormula(rng, depth - 1));
    case 1:
      return logic::Formula::conjunction(
          {randomFormula(rng, depth - 1), randomFormula(rng, depth - 1)});
    default:
      return logic::Formula::disjunction(
          {randomFormula(rng, depth - 1), randomFormula(rng, depth - 1)});
  }
}

const char* kControllerSource = R"(
class PaymentsController {
    void handle(PaymentRequest request) {
        if (request.getCard() == null) {
            if (request.getBankAccount() == null) {
                throw new ApiException("provide a card or a bankAccount");
            }
        }
        if (request.getOffset() > 80) {
            throw new ApiException("offset out of range");
        }
        if (request.getReference().length() > 80) {
            throw new ApiException("reference too long");
        }
        validateRedirect(request);
    }

    void validateRedirect(PaymentRequest request) {
        if ("iDEAL".equals(request.getPaymentMethod().getType()) && request.getReturnUrl() == null) {
            throw new ApiException("returnUrl is required for iDEAL payments");
        }
    }
}

class PaymentRequest {
    BankAccount bankAccount;
    Card card;
    PaymentMethod paymentMethod;
    String returnUrl;
    String reference;
    int offset;
}

class BankAccount { String iban; }
class Card { String number; }
class PaymentMethod { String type; }
)";

const char* kSpecJson = R"({
  "endpoint": "/payments",
  "schema": {"properties": {
    "bankAccount": {"type": "object", "properties": {"iban": {"type": "string"}}},
    "card": {"type": "object", "properties": {"number": {"type": "string"}}},
    "paymentMethod": {"type": "object", "properties": {"type": {"type": "string", "enum": ["iDEAL", "scheme"]}}},
    "returnUrl": {"type": "string"},
    "reference": {"type": "string"},
    "offset": {"type": "integer"}
  }}
})";

}  // namespace

static void BM_Normalize(benchmark::State& state) {
  std::mt19937 rng(7);
  std::vector<logic::Formula> formulas;
  for (int i = 0; i < 64; ++i) formulas.push_back(randomFormula(rng, 5));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize(formulas[i++ % formulas.size()]));
  }
}
BENCHMARK(BM_Normalize);

static void BM_EquivalenceCheck(benchmark::State& state) {
  const auto a = logic::parseDsl(
      "not (present(bankAccount) and present(card)) and offset > 80 -> invalid");
  const auto b = logic::parseDsl(
      "(not present(bankAccount) or not present(card)) and offset >= 81 -> invalid");
  std::vector<logic::Constraint> both{a[0], b[0]};
  const logic::Domain d = logic::Domain::forConstraints(both);
  for (auto _ : state) {
    benchmark::DoNotOptimize(logic::equivalent(a[0], b[0], d));
  }
}
BENCHMARK(BM_EquivalenceCheck);

static void BM_ParseDsl(benchmark::State& state) {
  std::string doc;
  for (int i = 0; i < 100; ++i)
    doc += "paymentMethod.type == \"iDEAL\" and not present(returnUrl) -> invalid\n";
  for (auto _ : state) {
    benchmark::DoNotOptimize(logic::parseDsl(doc));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ParseDsl);

static void BM_ParseUnit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lang::parseUnit(kControllerSource, "bench.mj"));
  }
}
BENCHMARK(BM_ParseUnit);

static void BM_ExtractConstraints(benchmark::State& state) {
  std::vector<lang::Unit> units;
  units.push_back(lang::parseUnit(kControllerSource, "bench.mj"));
  lang::ResolveConfig rc;
  rc.controllers = {"PaymentsController.handle"};
  rc.requestModels = {"PaymentRequest"};
  const lang::Program program = lang::resolveProgram(std::move(units), rc);
  const oas::EndpointSpec spec = oas::loadSpec(kSpecJson);
  analysis::AnalysisConfig config;
  config.controllers = rc.controllers;
  config.requestModels = rc.requestModels;

  for (auto _ : state) {
    analysis::Analyzer analyzer(program, &spec, config);
    benchmark::DoNotOptimize(analyzer.analyzeController("PaymentsController.handle"));
  }
}
BENCHMARK(BM_ExtractConstraints);

static void BM_EnumerateAndFit(benchmark::State& state) {
  const oas::EndpointSpec spec = oas::loadSpec(kSpecJson);
  cminer::doc::Candidate c;
  c.paths = {"bankAccount", "card"};
  for (auto _ : state) {
    probe::ObservationTable table = probe::enumerateRows(c, spec);
    for (auto& row : table.rows) {
      const bool bothAbsent = row.stateIndex[0] == 0 && row.stateIndex[1] == 0;
      row.result = bothAbsent ? probe::RowResult::Failure : probe::RowResult::Success;
    }
    benchmark::DoNotOptimize(probe::fitTemplates(table));
  }
}
BENCHMARK(BM_EnumerateAndFit);

BENCHMARK_MAIN();
