#include <gtest/gtest.h>

#include <random>

#include "cminer/analysis/analyzer.hpp"
#include "cminer/logic/dsl.hpp"

namespace analysis = cminer::analysis;
namespace lang = cminer::lang;
namespace oas = cminer::oas;
namespace logic = cminer::logic;
using analysis::AbstractValue;
using analysis::GuardResult;

namespace {

struct Harness {
  lang::Program program;
  oas::EndpointSpec spec;
  analysis::AnalysisConfig config;
  std::unique_ptr<analysis::Analyzer> analyzer;

  Harness(const std::string& src, const std::string& specJson,
          std::vector<std::string> controllers, std::vector<std::string> models) {
    std::vector<lang::Unit> units;
    units.push_back(lang::parseUnit(src, "test.mj"));
    lang::ResolveConfig rc;
    rc.controllers = controllers;
    rc.requestModels = models;
    program = lang::resolveProgram(std::move(units), rc);
    spec = oas::loadSpec(specJson);
    config.controllers = std::move(controllers);
    config.requestModels = std::move(models);
    analyzer = std::make_unique<analysis::Analyzer>(program, &spec, config);
  }

  const lang::MethodDecl& method(const std::string& cls, const std::string& name) const {
    const lang::MethodDecl* m = program.findMethod(cls, name);
    if (!m) throw std::runtime_error("no method " + cls + "." + name);
    return *m;
  }

  // The initializer expression of the first statement of Ctl.probe.
  const lang::Expr& probeExpr() const {
    return *method("Ctl", "probe").body->body[0]->expr;
  }
};

const char* kCardSpec = R"({
  "endpoint": "/payments",
  "schema": {"properties": {
    "card": {"type": "object", "properties": {
      "issuer": {"type": "string"}, "number": {"type": "string"},
      "cvc": {"type": "string"}}},
    "bankAccount": {"type": "object", "properties": {"iban": {"type": "string"}}},
    "offset": {"type": "integer"},
    "country": {"type": "string"},
    "urgent": {"type": "boolean"},
    "backupEmail": {"type": "string"}
  }}
})";

void expectEquivalentTo(const logic::Constraint& got, const std::string& dsl) {
  const auto expected = logic::parseDsl(dsl);
  ASSERT_EQ(expected.size(), 1u);
  std::vector<logic::Constraint> both{got, expected[0]};
  const logic::Domain d = logic::Domain::forConstraints(both);
  EXPECT_TRUE(logic::equivalent(got, expected[0], d))
      << "got:      " << logic::printConstraint(got) << "\n"
      << "expected: " << dsl;
}

}  // namespace

// ---------------------------------------------------------------------------
// evalExpression
// ---------------------------------------------------------------------------

TEST(EvalExpression, FoldsStringConcatenation) {
  Harness h(R"(
class Ctl { void probe(Req request) { String loc = "en" + "_US"; } }
class Req { String country; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  const AbstractValue v =
      h.analyzer->evalExpression(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_EQ(v, AbstractValue::strConst("en_US"));
}

TEST(EvalExpression, DecidedBooleanShortCircuit) {
  Harness h(R"(
class Ctl { void probe(Req request) { boolean b = true || unknownCall(); } }
class Req { String country; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  const AbstractValue v =
      h.analyzer->evalExpression(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_EQ(v, AbstractValue::boolConst(true));
}

TEST(EvalExpression, UnresolvableCallIsUnknown) {
  Harness h(R"(
class Ctl { void probe(Req request) { String v = externalService.lookup(request.getCountry()); } }
class Req { String country; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  const AbstractValue v =
      h.analyzer->evalExpression(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_TRUE(v.isUnknown());
}

TEST(EvalExpression, GetterChainsResolveToParamRefs) {
  Harness h(R"(
class Ctl { void probe(Req request) { String v = request.getCard().getIssuer(); } }
class Req { Card card; }
class Card { String issuer; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const AbstractValue v =
      h.analyzer->evalExpression(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_EQ(v, AbstractValue::paramRef("card.issuer"));
  // Accesses noted, most recent last.
  ASSERT_GE(stack.recency().size(), 2u);
  EXPECT_EQ(stack.recency().back(), "card.issuer");
}

TEST(EvalExpression, TrackedCollections) {
  Harness h(R"(
class Ctl { void probe(Req request) {
  List<String> countries = new List("NL", "BE");
  countries.add("DE");
  boolean x = countries.contains(request.getCountry());
} }
class Req { String country; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const auto& body = h.method("Ctl", "probe").body->body;
  h.analyzer->evalExpression(*body[0]->expr, stack, h.method("Ctl", "probe"));
  // First statement is a declaration; emulate the walk.
  stack.declare("countries",
                h.analyzer->evalExpression(*body[0]->expr, stack, h.method("Ctl", "probe")));
  h.analyzer->evalExpression(*body[1]->expr, stack, h.method("Ctl", "probe"));
  const AbstractValue* countries = stack.lookup("countries");
  ASSERT_NE(countries, nullptr);
  ASSERT_EQ(countries->kind, AbstractValue::Kind::Collection);
  ASSERT_EQ(countries->elements.size(), 3u);

  const GuardResult g = h.analyzer->parseGuard(*body[2]->expr, stack,
                                               h.method("Ctl", "probe"));
  ASSERT_EQ(g.kind, GuardResult::Kind::Formula);
  const auto* atom = std::get_if<logic::InSetAtom>(&g.formula->atom());
  ASSERT_NE(atom, nullptr);
  EXPECT_EQ(atom->path, "country");
  EXPECT_EQ(atom->values.size(), 3u);
}

// ---------------------------------------------------------------------------
// parseGuard
// ---------------------------------------------------------------------------

TEST(ParseGuard, GoldenUnparsedMixedGuard) {
  Harness h(R"(
class Ctl { void probe(Req request) {
  boolean g = !isValidCard(card) && card.getIssuer() != null;
} }
class Req { Card card; }
class Card { String issuer; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("card", AbstractValue::paramRef("card"));

  const GuardResult g =
      h.analyzer->parseGuard(h.probeExpr(), stack, h.method("Ctl", "probe"));
  ASSERT_EQ(g.kind, GuardResult::Kind::Formula);
  EXPECT_EQ(functionalForm(normalize(*g.formula)),
            "and(not(Unparsed(\"isValidCard(card)\")), present(card.issuer))");

  // The unparsed fragment is reported with its source span.
  bool noted = false;
  for (const auto& d : h.analyzer->diagnostics())
    if (d.kind == analysis::Diagnostic::Kind::Unparsed && d.text == "isValidCard(card)")
      noted = true;
  EXPECT_TRUE(noted);
}

TEST(ParseGuard, NumericComparisonOnGetter) {
  Harness h(R"(
class Ctl { void probe(Req request) { boolean g = request.getOffset() > 80; } }
class Req { int offset; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const GuardResult g =
      h.analyzer->parseGuard(h.probeExpr(), stack, h.method("Ctl", "probe"));
  ASSERT_EQ(g.kind, GuardResult::Kind::Formula);
  EXPECT_EQ(functionalForm(*g.formula), "cmp(offset, >, 80)");
}

TEST(ParseGuard, NullChecksBecomePresence) {
  Harness h(R"(
class Ctl { void probe(Req request) { boolean g = request.getCard() == null; } }
class Req { Card card; }
class Card { String issuer; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const GuardResult g =
      h.analyzer->parseGuard(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_EQ(functionalForm(normalize(*g.formula)), "not(present(card))");
}

TEST(ParseGuard, CommonMethods) {
  Harness h(R"(
class Ctl { void probe(Req request) {
  boolean a = request.getCountry().equals("US");
  boolean b = request.getCountry().length() > 2;
  boolean c = request.getCountry().isEmpty();
  boolean d = "en_US".startsWith("en");
} }
class Req { String country; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const auto& body = h.method("Ctl", "probe").body->body;
  const auto& m = h.method("Ctl", "probe");

  EXPECT_EQ(functionalForm(*h.analyzer->parseGuard(*body[0]->expr, stack, m).formula),
            "eq(country, \"US\")");
  EXPECT_EQ(functionalForm(*h.analyzer->parseGuard(*body[1]->expr, stack, m).formula),
            "len(country, >, 2)");
  EXPECT_EQ(functionalForm(*h.analyzer->parseGuard(*body[2]->expr, stack, m).formula),
            "len(country, ==, 0)");
  EXPECT_EQ(h.analyzer->parseGuard(*body[3]->expr, stack, m).kind,
            GuardResult::Kind::True);
}

TEST(ParseGuard, CmpBetweenParameters) {
  Harness h(R"(
class Ctl { void probe(Req request) {
  boolean g = request.getMinAmount() >= request.getMaxAmount();
} }
class Req { int minAmount; int maxAmount; }
)",
            R"({"schema": {"properties": {
                "minAmount": {"type": "integer"}, "maxAmount": {"type": "integer"}}}})",
            {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const GuardResult g =
      h.analyzer->parseGuard(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_EQ(functionalForm(*g.formula), "cmp(minAmount, >=, maxAmount)");
}

// ---------------------------------------------------------------------------
// booleanSummary
// ---------------------------------------------------------------------------

TEST(BooleanSummary, SingleReturnComparison) {
  Harness h(R"(
class Ctl {
  void probe(Req request) { int x = 0; }
  boolean oldEnough(int x) { return x >= 18; }
}
class Req { int offset; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  const GuardResult g = h.analyzer->booleanSummary(
      h.method("Ctl", "oldEnough"), {AbstractValue::paramRef("offset")});
  ASSERT_EQ(g.kind, GuardResult::Kind::Formula);
  EXPECT_EQ(functionalForm(*g.formula), "cmp(offset, >=, 18)");
}

TEST(BooleanSummary, TwoPathsBecomeDisjunction) {
  Harness h(R"(
class Ctl {
  void probe(Req request) { int x = 0; }
  boolean ok(Req request) {
    if (request.getUrgent() == true) { return true; }
    return request.getBackupEmail() != null;
  }
}
class Req { boolean urgent; String backupEmail; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  const GuardResult g =
      h.analyzer->booleanSummary(h.method("Ctl", "ok"), {AbstractValue::paramRef("")});
  ASSERT_EQ(g.kind, GuardResult::Kind::Formula);
  logic::Constraint got;
  got.precondition = normalize(*g.formula);
  expectEquivalentTo(got, "urgent == true or present(backupEmail) -> invalid");
}

TEST(BooleanSummary, NoTruePathIsConstantFalse) {
  Harness h(R"(
class Ctl {
  void probe(Req request) { int x = 0; }
  boolean never(Req request) { return false; }
}
class Req { int offset; }
)",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  const GuardResult g =
      h.analyzer->booleanSummary(h.method("Ctl", "never"), {AbstractValue::paramRef("")});
  EXPECT_EQ(g.kind, GuardResult::Kind::False);
}

// ---------------------------------------------------------------------------
// resolveParamRef
// ---------------------------------------------------------------------------

TEST(ResolveParamRef, UniqueNameResolvesDirectly) {
  Harness h("class Ctl { void probe(Req request) { int x = 0; } }\nclass Req { int offset; }",
            kCardSpec, {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  bool flagged = true;
  EXPECT_EQ(h.analyzer->resolveParamRef("offset", stack, &flagged), "offset");
  EXPECT_FALSE(flagged);
}

TEST(ResolveParamRef, RecencyPrefixDisambiguates) {
  Harness h(R"(
class Ctl { void probe(Req request) { int x = 0; } }
class Req { Card card; Bank bank; }
class Card { String reference; }
class Bank { String reference; }
)",
            R"({"schema": {"properties": {
              "card": {"type": "object", "properties": {"reference": {"type": "string"}}},
              "bank": {"type": "object", "properties": {"reference": {"type": "string"}}}
            }}})",
            {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.noteParamAccess("card");
  bool flagged = true;
  EXPECT_EQ(h.analyzer->resolveParamRef("reference", stack, &flagged), "card.reference");
  EXPECT_FALSE(flagged);
}

TEST(ResolveParamRef, EmptyRecencyFallsBackToRootMostAndFlags) {
  Harness h(R"(
class Ctl { void probe(Req request) { int x = 0; } }
class Req { String reference; Card card; }
class Card { String reference; }
)",
            R"({"schema": {"properties": {
              "reference": {"type": "string"},
              "card": {"type": "object", "properties": {"reference": {"type": "string"}}}
            }}})",
            {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  bool flagged = false;
  EXPECT_EQ(h.analyzer->resolveParamRef("reference", stack, &flagged), "reference");
  EXPECT_TRUE(flagged);
}

// ---------------------------------------------------------------------------
// extractConstraints
// ---------------------------------------------------------------------------

TEST(ExtractConstraints, Fig2StyleControllerYieldsBothConstraints) {
  Harness h(R"(
class PaymentController {
  void handle(PaymentRequest request) {
    if (request.getCard() == null) {
      if (request.getBankAccount() == null) {
        throw new ApiException("provide card or bankAccount");
      }
    }
    if (request.getOffset() > 80) {
      throw new ApiException("offset too large");
    }
  }
}
class PaymentRequest { Card card; BankAccount bankAccount; int offset; }
class Card { String number; }
class BankAccount { String iban; }
)",
            kCardSpec, {"PaymentController.handle"}, {"PaymentRequest"});
  const analysis::AnalysisResult result =
      h.analyzer->analyzeController("PaymentController.handle");
  ASSERT_EQ(result.constraints.size(), 2u);
  expectEquivalentTo(result.constraints[0],
                     "not present(card) and not present(bankAccount) -> invalid");
  expectEquivalentTo(result.constraints[1], "offset > 80 -> invalid");
  EXPECT_EQ(result.constraints[0].origin, logic::Origin::Code);
  EXPECT_EQ(result.constraints[0].sourceRef, "test.mj:6");
}

TEST(ExtractConstraints, FraudOffsetThreshold) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    if (request.getFraudOffset() >= 999) { throw new ApiException("fraud"); }
  }
}
class Req { int fraudOffset; }
)",
            R"({"schema": {"properties": {"fraudOffset": {"type": "integer"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 1u);
  expectEquivalentTo(result.constraints[0], "fraudOffset >= 999 -> invalid");
}

TEST(ExtractConstraints, DeferredErrorPattern) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    if (request.getEmail() == null) {
      result.addError("email required");
    }
    finish(result);
  }
}
class Req { String email; }
)",
            R"({"schema": {"properties": {"email": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 1u);
  expectEquivalentTo(result.constraints[0], "not present(email) -> invalid");
}

TEST(ExtractConstraints, NoInvalidStatesNoConstraints) {
  Harness h(R"(
class Ctl { void handle(Req request) { log(request.getEmail()); } }
class Req { String email; }
)",
            R"({"schema": {"properties": {"email": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  EXPECT_TRUE(h.analyzer->analyzeController("Ctl.handle").constraints.empty());
}

TEST(ExtractConstraints, InliningMatchesUnrefactoredVersion) {
  const char* specJson =
      R"({"schema": {"properties": {"a": {"type": "string"}, "b": {"type": "string"}}}})";
  Harness flat(R"(
class Ctl {
  void handle(Req request) {
    if (request.getA() != null) {
      if (request.getB() == null) { throw new ApiException("b"); }
    }
  }
}
class Req { String a; String b; }
)",
               specJson, {"Ctl.handle"}, {"Req"});
  Harness refactored(R"(
class Ctl {
  void handle(Req request) {
    if (request.getA() != null) { requireB(request); }
  }
  void requireB(Req request) {
    if (request.getB() == null) { throw new ApiException("b"); }
  }
}
class Req { String a; String b; }
)",
                     specJson, {"Ctl.handle"}, {"Req"});

  const auto flatResult = flat.analyzer->analyzeController("Ctl.handle");
  const auto refResult = refactored.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(flatResult.constraints.size(), 1u);
  ASSERT_EQ(refResult.constraints.size(), 1u);
  std::vector<logic::Constraint> both{flatResult.constraints[0], refResult.constraints[0]};
  const logic::Domain d = logic::Domain::forConstraints(both);
  EXPECT_TRUE(logic::equivalent(flatResult.constraints[0], refResult.constraints[0], d));
}

TEST(ExtractConstraints, ContextSensitiveArgumentBinding) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    need(request.getAccountCode());
    need(request.getAccountName());
  }
  void need(String value) {
    if (value == null) { throw new ApiException("missing"); }
  }
}
class Req { String accountCode; String accountName; }
)",
            R"({"schema": {"properties": {
              "accountCode": {"type": "string"}, "accountName": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 2u);
  expectEquivalentTo(result.constraints[0], "not present(accountCode) -> invalid");
  expectEquivalentTo(result.constraints[1], "not present(accountName) -> invalid");
}

TEST(ExtractConstraints, SwitchOverEnumParameter) {
  Harness h(R"(
enum Contract { ONECLICK, RECURRING }
class Ctl {
  void handle(Req request) {
    switch (request.getContract()) {
      case ONECLICK:
        if (request.getCvc() == null) { throw new ApiException("cvc"); }
        break;
      case RECURRING:
        log("ok");
        break;
      default:
        throw new ApiException("unknown contract");
    }
  }
}
class Req { Contract contract; String cvc; }
)",
            R"({"schema": {"properties": {
              "contract": {"type": "string", "enum": ["ONECLICK", "RECURRING"]},
              "cvc": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 2u);
  expectEquivalentTo(result.constraints[0],
                     "contract == \"ONECLICK\" and not present(cvc) -> invalid");
  expectEquivalentTo(
      result.constraints[1],
      "not contract == \"ONECLICK\" and not contract == \"RECURRING\" -> invalid");
}

TEST(ExtractConstraints, ElseBranchContributesNegation) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    if (request.getAmountValue() > 0) {
      log("ok");
    } else {
      throw new ApiException("amount must be positive");
    }
  }
}
class Req { int amountValue; }
)",
            R"({"schema": {"properties": {"amountValue": {"type": "integer"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 1u);
  expectEquivalentTo(result.constraints[0], "not amountValue > 0 -> invalid");
}

// One-sided branch writes do not survive the join: the later guard cannot be
// decided, degrades to an unparsed fragment, and the constraint is partial
// rather than wrong (the data-flow limitation, B6).
TEST(ExtractConstraints, OneSidedWriteDegradesToUnparsed) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    boolean needsBank = false;
    if (request.getMethod() == null) {
      needsBank = true;
    }
    if (needsBank && request.getBank() == null) {
      throw new ApiException("bank required");
    }
  }
}
class Req { String method; Bank bank; }
class Bank { String iban; }
)",
            R"({"schema": {"properties": {
              "method": {"type": "string"},
              "bank": {"type": "object", "properties": {"iban": {"type": "string"}}}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 1u);
  EXPECT_TRUE(result.constraints[0].partial());
  bool unparsedNeedsBank = false;
  for (const auto& d : result.diagnostics)
    if (d.kind == analysis::Diagnostic::Kind::Unparsed && d.text == "needsBank")
      unparsedNeedsBank = true;
  EXPECT_TRUE(unparsedNeedsBank);
}

// Writes on all exclusive branches keep the most recent modification.
TEST(ExtractConstraints, ExclusiveBranchWritesKeepMostRecent) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    List<String> allowed = new List("NL");
    if (request.getExtended() != null) {
      allowed = new List("NL", "BE");
    } else {
      allowed = new List("NL", "DE");
    }
    if (!allowed.contains(request.getCountry())) {
      throw new ApiException("country not allowed");
    }
  }
}
class Req { String extended; String country; }
)",
            R"({"schema": {"properties": {
              "extended": {"type": "string"}, "country": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 1u);
  expectEquivalentTo(result.constraints[0],
                     "not country in {\"NL\", \"DE\"} -> invalid");
}

TEST(ExtractConstraints, UndocumentedModelFieldIsNotAParameter) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    if (request.getInternalFlag() == null) { throw new ApiException("flag"); }
  }
}
class Req { String email; String internalFlag; }
)",
            R"({"schema": {"properties": {"email": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  // The guard cannot reference a parameter: kept for review, not asserted.
  ASSERT_EQ(result.constraints.size(), 1u);
  EXPECT_TRUE(result.constraints[0].partial());
  bool b1 = false;
  for (const auto& d : result.diagnostics)
    if (d.kind == analysis::Diagnostic::Kind::UnknownParameter) b1 = true;
  EXPECT_TRUE(b1);
}

TEST(ExtractConstraints, ForEachAppliesConditionsToArrayParameter) {
  Harness h(R"(
class Ctl {
  void handle(Req request) {
    for (Person person : request.getPeople()) {
      if (person.getName() == null) { throw new ApiException("name"); }
    }
  }
}
class Req { List<Person> people; }
class Person { String name; }
)",
            R"({"schema": {"properties": {
              "people": {"type": "array", "items": {"type": "object", "properties":
                {"name": {"type": "string"}}}}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  ASSERT_EQ(result.constraints.size(), 1u);
  expectEquivalentTo(result.constraints[0], "not present(people.name) -> invalid");
}

TEST(ExtractConstraints, RecursionAndDepthBudget) {
  Harness h(R"(
class Ctl {
  void handle(Req request) { spin(request); }
  void spin(Req request) { spin(request); }
}
class Req { String email; }
)",
            R"({"schema": {"properties": {"email": {"type": "string"}}}})",
            {"Ctl.handle"}, {"Req"});
  const auto result = h.analyzer->analyzeController("Ctl.handle");
  EXPECT_TRUE(result.constraints.empty());
  bool cut = false;
  for (const auto& d : result.diagnostics)
    if (d.kind == analysis::Diagnostic::Kind::RecursiveCut) cut = true;
  EXPECT_TRUE(cut);
}

// ---------------------------------------------------------------------------
// VariableStack discipline
// ---------------------------------------------------------------------------

TEST(VariableStackProperty, PushPopRestoresExactly) {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    analysis::VariableStack stack;
    stack.declare("x", AbstractValue::intConst(1));
    stack.declare("y", AbstractValue::strConst("s"));
    const auto baseline = stack.flatten();
    const size_t depth = stack.scopeDepth();

    const int pushes = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < pushes; ++i) {
      stack.pushScope();
      for (int d = 0; d < 3; ++d) {
        const std::string name(1, static_cast<char>('a' + rng() % 6));
        stack.declare(name, AbstractValue::intConst(static_cast<int>(rng() % 100)));
      }
      // Shadowing reads resolve innermost.
      if (const AbstractValue* v = stack.lookup("x")) (void)v;
    }
    for (int i = 0; i < pushes; ++i) stack.popScope();

    EXPECT_EQ(stack.scopeDepth(), depth);
    EXPECT_EQ(stack.flatten(), baseline);
  }
}

TEST(VariableStack, InnermostScopeWinsAndAssignUpdates) {
  analysis::VariableStack stack;
  stack.declare("v", AbstractValue::intConst(1));
  stack.pushScope();
  stack.declare("v", AbstractValue::intConst(2));
  EXPECT_EQ(stack.lookup("v")->intValue, 2);
  stack.assign("v", AbstractValue::intConst(3));
  EXPECT_EQ(stack.lookup("v")->intValue, 3);
  stack.popScope();
  EXPECT_EQ(stack.lookup("v")->intValue, 1);
}

// Inlined callees run on their own frame: caller locals are untouched.
TEST(VariableStack, InliningLeavesCallerStackIntact) {
  Harness h(R"(
class Ctl {
  void probe(Req request) { int x = helper(); }
  int helper() { int y = 5; return y; }
}
class Req { String email; }
)",
            R"({"schema": {"properties": {"email": {"type": "string"}}}})",
            {"Ctl.probe"}, {"Req"});
  analysis::VariableStack stack;
  stack.declare("request", AbstractValue::paramRef(""));
  const auto before = stack.flatten();
  const size_t depthBefore = stack.scopeDepth();
  h.analyzer->evalExpression(h.probeExpr(), stack, h.method("Ctl", "probe"));
  EXPECT_EQ(stack.scopeDepth(), depthBefore);
  EXPECT_EQ(stack.flatten(), before);
}
