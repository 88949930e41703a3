#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cminer/analysis/analysis_config.hpp"
#include "cminer/analysis/call_graph.hpp"
#include "cminer/analysis/variable_stack.hpp"
#include "cminer/lang/program.hpp"
#include "cminer/logic/constraint.hpp"
#include "cminer/oas/endpoint_spec.hpp"

namespace cminer::analysis {

struct Diagnostic {
  enum class Kind {
    Unparsed,          // a guard fragment kept verbatim
    TruncatedCall,     // interprocedural depth budget exhausted
    RecursiveCut,      // recursion cut at first revisit
    UnresolvedCall,    // callee outside the program (framework, library)
    AmbiguousParam,    // duplicated field name resolved by tie-break
    UnknownParameter,  // model field absent from the endpoint spec
  };

  Kind kind = Kind::Unparsed;
  std::string method;  // "Class.method"
  int line = 0;
  int col = 0;
  std::string text;
};

nlohmann::json diagnosticsToJson(const std::vector<Diagnostic>& ds);

struct AnalysisResult {
  std::vector<logic::Constraint> constraints;
  std::vector<Diagnostic> diagnostics;
  CallGraph callGraph;
};

/// Outcome of parsing a boolean expression: a formula, or a decided
/// constant.
struct GuardResult {
  enum class Kind { Formula, True, False };
  Kind kind = Kind::True;
  std::optional<logic::Formula> formula;

  static GuardResult truth(bool b) {
    GuardResult g;
    g.kind = b ? Kind::True : Kind::False;
    return g;
  }
  static GuardResult of(logic::Formula f) {
    GuardResult g;
    g.kind = Kind::Formula;
    g.formula = std::move(f);
    return g;
  }
  bool isConst() const { return kind != Kind::Formula; }
};

GuardResult guardNot(GuardResult g);
GuardResult guardAnd(GuardResult a, GuardResult b);
GuardResult guardOr(GuardResult a, GuardResult b);

/// Flow-sensitive, partially path-sensitive, context-sensitive walk of a
/// controller: evaluates expressions against the variable stack, parses
/// guards into formulas, inlines callees depth-limited, and emits one
/// constraint per reachable invalid state.
class Analyzer {
 public:
  /// `spec` is the parameter universe (detection is limited to documented
  /// parameters); when null, the request-model paths stand in.
  Analyzer(const lang::Program& program, const oas::EndpointSpec* spec,
           const AnalysisConfig& config);

  AnalysisResult analyzeController(const std::string& rootRef);

  // Operation-level entry points (used heavily by tests).
  AbstractValue evalExpression(const lang::Expr& e, VariableStack& stack,
                               const lang::MethodDecl& context);
  GuardResult parseGuard(const lang::Expr& e, VariableStack& stack,
                         const lang::MethodDecl& context);
  GuardResult booleanSummary(const lang::MethodDecl& m, std::vector<AbstractValue> args);
  std::string resolveParamRef(const std::string& fieldName, const VariableStack& stack,
                              bool* flaggedAmbiguous = nullptr);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  struct Frame {
    const lang::MethodDecl* method = nullptr;
    const lang::ClassDecl* klass = nullptr;
  };

  // --- statement walking ---
  bool walkStmts(const std::vector<lang::StmtPtr>& stmts, VariableStack& stack);
  bool walkStmt(const lang::Stmt& s, VariableStack& stack);
  bool walkBranch(const lang::Stmt& s, VariableStack& stack);
  void walkIf(const lang::Stmt& s, VariableStack& stack, bool& terminated);
  void walkSwitch(const lang::Stmt& s, VariableStack& stack, bool& terminated);
  void joinBranches(VariableStack& stack, const VariableStack& base,
                    std::vector<VariableStack> branchOutcomes, bool coversAllPaths);

  // --- expressions & guards ---
  AbstractValue evalExpr(const lang::Expr& e, VariableStack& stack);
  AbstractValue evalCall(const lang::Expr& e, VariableStack& stack);
  AbstractValue resolveFieldOnParam(const std::string& paramPath,
                                    const std::string& fieldName, VariableStack& stack,
                                    const lang::Expr& site);
  GuardResult parseGuardExpr(const lang::Expr& e, VariableStack& stack);
  GuardResult parseComparison(const lang::Expr& e, VariableStack& stack);
  GuardResult parseBooleanCall(const lang::Expr& e, VariableStack& stack);

  enum class SummaryStatus { FellThrough, Terminated, Unsupported };
  GuardResult summaryOf(const lang::MethodDecl& callee, std::vector<AbstractValue> args,
                        const lang::Span& span, const std::string& callText,
                        VariableStack& callerStack);
  SummaryStatus summarySeq(const std::vector<lang::StmtPtr>& stmts, VariableStack& stack,
                           GuardResult& pathCond, std::vector<GuardResult>& trueConds);
  SummaryStatus summaryStmt(const lang::Stmt& s, VariableStack& stack,
                            GuardResult& pathCond, std::vector<GuardResult>& trueConds);

  // --- inlining ---
  AbstractValue inlineCall(const lang::MethodDecl& callee, const lang::ClassDecl& cls,
                           std::vector<AbstractValue> args, VariableStack& callerStack);

  // --- emission & plumbing ---
  void emitInvalidState(const lang::Stmt& site);
  GuardResult unparsed(const lang::Expr& e);
  std::string sourceSlice(const lang::Expr& e) const;
  void note(Diagnostic::Kind kind, const lang::Span& span, std::string text);
  std::string frameName() const;
  bool isParameterPath(const std::string& path) const;
  std::vector<std::string> universePathsForField(const std::string& field) const;
  void finalizeConstraints(std::vector<logic::Constraint>& out);

  const lang::Program& program_;
  const oas::EndpointSpec* spec_;
  const AnalysisConfig& config_;

  std::vector<Frame> frames_;
  std::vector<logic::Formula> guards_;
  std::vector<const lang::MethodDecl*> callPath_;
  int depth_ = 0;

  std::vector<logic::Constraint> constraints_;
  std::vector<Diagnostic> diagnostics_;

  std::multimap<std::string, std::string> universeBySegment_;
  std::set<std::string> universe_;
};

}  // namespace cminer::analysis
