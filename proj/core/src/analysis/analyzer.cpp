#include "cminer/analysis/analyzer.hpp"

#include <algorithm>
#include <cassert>

#include "cminer/logic/dsl.hpp"

namespace cminer::analysis {

using lang::Expr;
using lang::Stmt;
using logic::Formula;

nlohmann::json diagnosticsToJson(const std::vector<Diagnostic>& ds) {
  auto kindText = [](Diagnostic::Kind k) {
    switch (k) {
      case Diagnostic::Kind::Unparsed: return "unparsed";
      case Diagnostic::Kind::TruncatedCall: return "truncated-call";
      case Diagnostic::Kind::RecursiveCut: return "recursive-cut";
      case Diagnostic::Kind::UnresolvedCall: return "unresolved-call";
      case Diagnostic::Kind::AmbiguousParam: return "ambiguous-parameter";
      case Diagnostic::Kind::UnknownParameter: return "unknown-parameter";
    }
    return "?";
  };
  nlohmann::json out = nlohmann::json::array();
  for (const Diagnostic& d : ds) {
    out.push_back({{"kind", kindText(d.kind)},
                   {"method", d.method},
                   {"line", d.line},
                   {"col", d.col},
                   {"text", d.text}});
  }
  return out;
}

GuardResult guardNot(GuardResult g) {
  switch (g.kind) {
    case GuardResult::Kind::True: return GuardResult::truth(false);
    case GuardResult::Kind::False: return GuardResult::truth(true);
    case GuardResult::Kind::Formula:
      return GuardResult::of(Formula::negation(std::move(*g.formula)));
  }
  return g;
}

GuardResult guardAnd(GuardResult a, GuardResult b) {
  if (a.kind == GuardResult::Kind::False || b.kind == GuardResult::Kind::False)
    return GuardResult::truth(false);
  if (a.kind == GuardResult::Kind::True) return b;
  if (b.kind == GuardResult::Kind::True) return a;
  return GuardResult::of(
      Formula::conjunction({std::move(*a.formula), std::move(*b.formula)}));
}

GuardResult guardOr(GuardResult a, GuardResult b) {
  if (a.kind == GuardResult::Kind::True || b.kind == GuardResult::Kind::True)
    return GuardResult::truth(true);
  if (a.kind == GuardResult::Kind::False) return b;
  if (b.kind == GuardResult::Kind::False) return a;
  return GuardResult::of(
      Formula::disjunction({std::move(*a.formula), std::move(*b.formula)}));
}

namespace {

logic::CmpOp toCmpOp(lang::BinOp op) {
  switch (op) {
    case lang::BinOp::Eq: return logic::CmpOp::Eq;
    case lang::BinOp::Ne: return logic::CmpOp::Ne;
    case lang::BinOp::Lt: return logic::CmpOp::Lt;
    case lang::BinOp::Le: return logic::CmpOp::Le;
    case lang::BinOp::Gt: return logic::CmpOp::Gt;
    case lang::BinOp::Ge: return logic::CmpOp::Ge;
    default: assert(false); return logic::CmpOp::Eq;
  }
}

logic::CmpOp flipCmpOp(logic::CmpOp op) {
  switch (op) {
    case logic::CmpOp::Lt: return logic::CmpOp::Gt;
    case logic::CmpOp::Le: return logic::CmpOp::Ge;
    case logic::CmpOp::Gt: return logic::CmpOp::Lt;
    case logic::CmpOp::Ge: return logic::CmpOp::Le;
    default: return op;
  }
}

bool isComparisonOp(lang::BinOp op) {
  switch (op) {
    case lang::BinOp::Eq:
    case lang::BinOp::Ne:
    case lang::BinOp::Lt:
    case lang::BinOp::Le:
    case lang::BinOp::Gt:
    case lang::BinOp::Ge:
      return true;
    default:
      return false;
  }
}

int sharedPrefixSegments(const std::string& a, const std::string& b) {
  size_t ia = 0, ib = 0;
  int shared = 0;
  while (true) {
    const size_t da = a.find('.', ia);
    const size_t db = b.find('.', ib);
    const std::string sa = a.substr(ia, da == std::string::npos ? a.size() - ia : da - ia);
    const std::string sb = b.substr(ib, db == std::string::npos ? b.size() - ib : db - ib);
    if (sa.empty() || sb.empty() || sa != sb) return shared;
    ++shared;
    if (da == std::string::npos || db == std::string::npos) return shared;
    ia = da + 1;
    ib = db + 1;
  }
}

int segmentCount(const std::string& path) {
  if (path.empty()) return 0;
  return static_cast<int>(std::count(path.begin(), path.end(), '.')) + 1;
}

std::string lastSegment(const std::string& path) {
  const size_t dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(dot + 1);
}

bool isCollectionConstructor(const std::string& type) {
  const std::string base = type.substr(0, type.find('<'));
  return base == "List" || base == "ArrayList" || base == "Set" || base == "HashSet";
}

std::optional<logic::Literal> literalOf(const AbstractValue& v) {
  switch (v.kind) {
    case AbstractValue::Kind::IntConst: return logic::Literal{v.intValue};
    case AbstractValue::Kind::StrConst: return logic::Literal{v.text};
    case AbstractValue::Kind::BoolConst: return logic::Literal{v.boolValue};
    case AbstractValue::Kind::EnumConst: return logic::Literal{v.text};
    default: return std::nullopt;
  }
}

}  // namespace

Analyzer::Analyzer(const lang::Program& program, const oas::EndpointSpec* spec,
                   const AnalysisConfig& config)
    : program_(program), spec_(spec), config_(config) {
  if (spec_) {
    for (const auto& [path, p] : spec_->flatIndex()) universe_.insert(path);
  } else {
    for (const auto& [path, type] : program_.modelPaths()) universe_.insert(path);
  }
  for (const std::string& path : universe_)
    universeBySegment_.emplace(lastSegment(path), path);
}

std::string Analyzer::frameName() const {
  if (frames_.empty()) return "<none>";
  const Frame& f = frames_.back();
  return (f.klass ? f.klass->name : std::string("?")) + "." + f.method->name;
}

bool Analyzer::isParameterPath(const std::string& path) const {
  return universe_.contains(path);
}

std::vector<std::string> Analyzer::universePathsForField(const std::string& field) const {
  std::vector<std::string> out;
  auto [lo, hi] = universeBySegment_.equal_range(field);
  for (auto it = lo; it != hi; ++it) out.push_back(it->second);
  return out;
}

void Analyzer::note(Diagnostic::Kind kind, const lang::Span& span, std::string text) {
  diagnostics_.push_back({kind, frameName(), span.line, span.col, std::move(text)});
}

std::string Analyzer::sourceSlice(const Expr& e) const {
  const std::string* src = nullptr;
  if (!frames_.empty()) src = &program_.sourceOf(frames_.back().method);
  if (!src || e.span.end <= e.span.begin || e.span.end > src->size())
    return lang::printExpr(e);
  std::string out = src->substr(e.span.begin, e.span.end - e.span.begin);
  // Collapse line breaks and trim for readable diagnostics.
  std::string cleaned;
  bool lastSpace = false;
  for (char c : out) {
    const char ch = (c == '\n' || c == '\t') ? ' ' : c;
    if (ch == ' ' && lastSpace) continue;
    lastSpace = ch == ' ';
    cleaned += ch;
  }
  while (!cleaned.empty() && cleaned.back() == ' ') cleaned.pop_back();
  while (!cleaned.empty() && cleaned.front() == ' ') cleaned.erase(cleaned.begin());
  return cleaned;
}

GuardResult Analyzer::unparsed(const Expr& e) {
  const std::string text = sourceSlice(e);
  note(Diagnostic::Kind::Unparsed, e.span, text);
  return GuardResult::of(Formula::leaf(logic::UnparsedAtom{text}));
}

// ---------------------------------------------------------------------------
// Expression evaluation
// ---------------------------------------------------------------------------

AbstractValue Analyzer::evalExpression(const Expr& e, VariableStack& stack,
                                       const lang::MethodDecl& context) {
  frames_.push_back({&context, program_.classOf(&context)});
  AbstractValue v = evalExpr(e, stack);
  frames_.pop_back();
  return v;
}

AbstractValue Analyzer::evalExpr(const Expr& e, VariableStack& stack) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      return AbstractValue::intConst(e.intValue);
    case Expr::Kind::StringLit:
      return AbstractValue::strConst(e.text);
    case Expr::Kind::BoolLit:
      return AbstractValue::boolConst(e.intValue != 0);
    case Expr::Kind::NullLit:
      return AbstractValue::unknown();

    case Expr::Kind::Var: {
      const AbstractValue* v = stack.lookup(e.text);
      if (!v) return AbstractValue::unknown();
      if (v->isParam()) stack.noteParamAccess(v->text);
      return *v;
    }

    case Expr::Kind::FieldAccess: {
      if (e.target->kind == Expr::Kind::Var) {
        if (const lang::EnumDecl* en = program_.findEnum(e.target->text)) {
          for (const std::string& c : en->constants)
            if (c == e.text) return AbstractValue::enumConst(c);
          return AbstractValue::unknown();
        }
      }
      const AbstractValue target = evalExpr(*e.target, stack);
      if (target.isParam()) return resolveFieldOnParam(target.text, e.text, stack, e);
      return AbstractValue::unknown();
    }

    case Expr::Kind::MethodCall:
      return evalCall(e, stack);

    case Expr::Kind::New: {
      std::vector<AbstractValue> args;
      args.reserve(e.args.size());
      for (const lang::ExprPtr& a : e.args) args.push_back(evalExpr(*a, stack));
      if (isCollectionConstructor(e.text)) {
        std::vector<logic::Literal> elems;
        for (const AbstractValue& a : args) {
          auto lit = literalOf(a);
          if (!lit) return AbstractValue::unknown();  // only literal contents tracked
          elems.push_back(*lit);
        }
        return AbstractValue::collection(std::move(elems));
      }
      // Object creation dereferences parameters: fields of the new object
      // are not tracked.
      return AbstractValue::unknown();
    }

    case Expr::Kind::Not: {
      const AbstractValue v = evalExpr(*e.target, stack);
      if (v.kind == AbstractValue::Kind::BoolConst)
        return AbstractValue::boolConst(!v.boolValue);
      return AbstractValue::unknown();
    }

    case Expr::Kind::Binary: {
      const AbstractValue l = evalExpr(*e.lhs, stack);
      const AbstractValue r = evalExpr(*e.rhs, stack);
      using K = AbstractValue::Kind;

      if (e.op == lang::BinOp::And || e.op == lang::BinOp::Or) {
        const bool isAnd = e.op == lang::BinOp::And;
        auto boolOf = [](const AbstractValue& v) -> std::optional<bool> {
          if (v.kind == K::BoolConst) return v.boolValue;
          return std::nullopt;
        };
        const auto lb = boolOf(l), rb = boolOf(r);
        // Decided only when surely true or surely false.
        if (isAnd) {
          if ((lb && !*lb) || (rb && !*rb)) return AbstractValue::boolConst(false);
          if (lb && rb) return AbstractValue::boolConst(*lb && *rb);
        } else {
          if ((lb && *lb) || (rb && *rb)) return AbstractValue::boolConst(true);
          if (lb && rb) return AbstractValue::boolConst(*lb || *rb);
        }
        return AbstractValue::unknown();
      }

      if (isComparisonOp(e.op)) {
        if (l.kind == K::IntConst && r.kind == K::IntConst)
          return AbstractValue::boolConst(logic::applyCmp(
              toCmpOp(e.op), static_cast<double>(l.intValue), static_cast<double>(r.intValue)));
        if ((e.op == lang::BinOp::Eq || e.op == lang::BinOp::Ne)) {
          if ((l.kind == K::StrConst && r.kind == K::StrConst) ||
              (l.kind == K::EnumConst && r.kind == K::EnumConst) ||
              (l.kind == K::BoolConst && r.kind == K::BoolConst)) {
            const bool eq = l == r;
            return AbstractValue::boolConst(e.op == lang::BinOp::Eq ? eq : !eq);
          }
        }
        return AbstractValue::unknown();
      }

      // Arithmetic / concatenation.
      if (e.op == lang::BinOp::Add) {
        if (l.kind == K::IntConst && r.kind == K::IntConst)
          return AbstractValue::intConst(l.intValue + r.intValue);
        if (l.kind == K::StrConst && r.kind == K::StrConst)
          return AbstractValue::strConst(l.text + r.text);
        if (l.kind == K::StrConst && r.kind == K::IntConst)
          return AbstractValue::strConst(l.text + std::to_string(r.intValue));
        return AbstractValue::unknown();
      }
      if (l.kind == K::IntConst && r.kind == K::IntConst) {
        switch (e.op) {
          case lang::BinOp::Sub: return AbstractValue::intConst(l.intValue - r.intValue);
          case lang::BinOp::Mul: return AbstractValue::intConst(l.intValue * r.intValue);
          case lang::BinOp::Div:
            if (r.intValue == 0) return AbstractValue::unknown();
            return AbstractValue::intConst(l.intValue / r.intValue);
          default: break;
        }
      }
      return AbstractValue::unknown();
    }
  }
  return AbstractValue::unknown();
}

AbstractValue Analyzer::resolveFieldOnParam(const std::string& paramPath,
                                            const std::string& fieldName,
                                            VariableStack& stack, const Expr& site) {
  const std::string childPath =
      paramPath.empty() ? fieldName : paramPath + "." + fieldName;
  if (isParameterPath(childPath)) {
    stack.noteParamAccess(childPath);
    return AbstractValue::paramRef(childPath);
  }
  if (spec_ && program_.modelPaths().contains(childPath)) {
    // Accessed through the model but undocumented: not a parameter (B1).
    note(Diagnostic::Kind::UnknownParameter, site.span,
         childPath + " is a model field but not a documented parameter");
    return AbstractValue::unknown();
  }
  const std::vector<std::string> candidates = universePathsForField(fieldName);
  if (!candidates.empty()) {
    bool flagged = false;
    const std::string resolved = resolveParamRef(fieldName, stack, &flagged);
    if (flagged)
      note(Diagnostic::Kind::AmbiguousParam, site.span,
           "'" + fieldName + "' resolved to " + resolved + " by tie-break");
    stack.noteParamAccess(resolved);
    return AbstractValue::paramRef(resolved);
  }
  return AbstractValue::unknown();
}

std::string Analyzer::resolveParamRef(const std::string& fieldName,
                                      const VariableStack& stack,
                                      bool* flaggedAmbiguous) {
  const std::vector<std::string> candidates = universePathsForField(fieldName);
  if (flaggedAmbiguous) *flaggedAmbiguous = false;
  if (candidates.empty())
    throw std::invalid_argument("no parameter path has field name '" + fieldName + "'");
  if (candidates.size() == 1) return candidates.front();

  // Prefer the candidate sharing the longest path prefix with the most
  // recently accessed parameter.
  if (!stack.recency().empty()) {
    const std::string& recent = stack.recency().back();
    int bestScore = -1;
    std::vector<std::string> best;
    for (const std::string& c : candidates) {
      const int score = sharedPrefixSegments(c, recent);
      if (score > bestScore) {
        bestScore = score;
        best = {c};
      } else if (score == bestScore) {
        best.push_back(c);
      }
    }
    if (best.size() == 1 && bestScore > 0) return best.front();
  }

  // No usable recency: root-most (shortest) path wins, flagged for review.
  std::string chosen = candidates.front();
  for (const std::string& c : candidates) {
    const int sc = segmentCount(c), sb = segmentCount(chosen);
    if (sc < sb || (sc == sb && c < chosen)) chosen = c;
  }
  if (flaggedAmbiguous) *flaggedAmbiguous = true;
  return chosen;
}

AbstractValue Analyzer::evalCall(const Expr& e, VariableStack& stack) {
  // Bare call: a method of the current class.
  if (!e.target) {
    const Frame& f = frames_.back();
    const lang::MethodDecl* callee = f.klass ? program_.findMethod(f.klass->name, e.text)
                                             : nullptr;
    if (callee) {
      std::vector<AbstractValue> args;
      for (const lang::ExprPtr& a : e.args) args.push_back(evalExpr(*a, stack));
      return inlineCall(*callee, *program_.classOf(callee), std::move(args), stack);
    }
    note(Diagnostic::Kind::UnresolvedCall, e.span, sourceSlice(e));
    return AbstractValue::unknown();
  }

  // Class-qualified call (TaskRegistry.lookup(...)).
  if (e.target->kind == Expr::Kind::Var && !stack.lookup(e.target->text) &&
      program_.findClass(e.target->text)) {
    const lang::MethodDecl* callee = program_.findMethod(e.target->text, e.text);
    if (callee) {
      std::vector<AbstractValue> args;
      for (const lang::ExprPtr& a : e.args) args.push_back(evalExpr(*a, stack));
      return inlineCall(*callee, *program_.findClass(e.target->text), std::move(args),
                        stack);
    }
  }

  const AbstractValue target = evalExpr(*e.target, stack);

  // Getter-shaped projection over a parameter reference.
  if (e.args.empty()) {
    if (auto field = lang::getterField(e.text)) {
      if (target.isParam()) return resolveFieldOnParam(target.text, *field, stack, e);
      // The reference was lost earlier (object creation, framework value):
      // nothing to project from.
      return AbstractValue::unknown();
    }
  }

  // Tracked collection mutation: c.add(literal).
  if (e.text == "add" && e.args.size() == 1 &&
      e.target->kind == Expr::Kind::Var) {
    const AbstractValue* bound = stack.lookup(e.target->text);
    if (bound && bound->kind == AbstractValue::Kind::Collection) {
      const AbstractValue arg = evalExpr(*e.args[0], stack);
      if (auto lit = literalOf(arg)) {
        AbstractValue updated = *bound;
        updated.elements.push_back(*lit);
        stack.assign(e.target->text, std::move(updated));
      } else {
        stack.assign(e.target->text, AbstractValue::unknown());
      }
      return AbstractValue::unknown();
    }
  }

  // Configured common methods fold on constants.
  auto common = config_.commonMethods.find(e.text);
  if (common != config_.commonMethods.end()) {
    std::vector<AbstractValue> args;
    for (const lang::ExprPtr& a : e.args) args.push_back(evalExpr(*a, stack));
    switch (common->second) {
      case CommonMethod::Length:
        if (target.kind == AbstractValue::Kind::StrConst)
          return AbstractValue::intConst(static_cast<std::int64_t>(target.text.size()));
        break;
      case CommonMethod::IsEmpty:
        if (target.kind == AbstractValue::Kind::StrConst)
          return AbstractValue::boolConst(target.text.empty());
        if (target.kind == AbstractValue::Kind::Collection)
          return AbstractValue::boolConst(target.elements.empty());
        break;
      case CommonMethod::Equals:
        if (args.size() == 1) {
          const auto lt = literalOf(target);
          const auto rt = literalOf(args[0]);
          if (lt && rt) return AbstractValue::boolConst(logic::literalEquals(*lt, *rt));
        }
        break;
      case CommonMethod::Contains:
        if (target.kind == AbstractValue::Kind::Collection && args.size() == 1) {
          if (auto lit = literalOf(args[0])) {
            const bool found =
                std::any_of(target.elements.begin(), target.elements.end(),
                            [&](const logic::Literal& m) {
                              return logic::literalEquals(m, *lit);
                            });
            return AbstractValue::boolConst(found);
          }
        }
        break;
      case CommonMethod::StartsWith:
        if (target.kind == AbstractValue::Kind::StrConst && args.size() == 1 &&
            args[0].kind == AbstractValue::Kind::StrConst)
          return AbstractValue::boolConst(target.text.rfind(args[0].text, 0) == 0);
        break;
    }
    return AbstractValue::unknown();
  }

  // Instance call on something we track as a value: resolvable only if the
  // receiver names a program class (handled above). Everything else is
  // framework/library territory.
  std::vector<AbstractValue> args;
  bool involvesParams = target.isParam();
  for (const lang::ExprPtr& a : e.args) {
    args.push_back(evalExpr(*a, stack));
    involvesParams = involvesParams || args.back().isParam();
  }
  if (involvesParams)
    note(Diagnostic::Kind::UnresolvedCall, e.span, sourceSlice(e));
  return AbstractValue::unknown();
}

AbstractValue Analyzer::inlineCall(const lang::MethodDecl& callee,
                                   const lang::ClassDecl& cls,
                                   std::vector<AbstractValue> args,
                                   VariableStack& callerStack) {
  if (std::find(callPath_.begin(), callPath_.end(), &callee) != callPath_.end()) {
    note(Diagnostic::Kind::RecursiveCut, callee.span, cls.name + "." + callee.name);
    return AbstractValue::unknown();
  }
  if (depth_ + 1 > config_.maxDepth) {
    note(Diagnostic::Kind::TruncatedCall, callee.span,
         cls.name + "." + callee.name + " beyond depth " +
             std::to_string(config_.maxDepth));
    return AbstractValue::unknown();
  }

  // Fresh frame: callees see their own locals only; the parameter-access
  // recency carries across frames.
  VariableStack calleeStack;
  for (size_t i = 0; i < callee.params.size(); ++i)
    calleeStack.declare(callee.params[i].name,
                        i < args.size() ? std::move(args[i]) : AbstractValue::unknown());
  calleeStack.appendRecency(callerStack.recency(), 0);
  const size_t recencyBase = calleeStack.recency().size();

  ++depth_;
  callPath_.push_back(&callee);
  frames_.push_back({&callee, &cls});
  walkStmts(callee.body->body, calleeStack);
  frames_.pop_back();
  callPath_.pop_back();
  --depth_;

  callerStack.appendRecency(calleeStack.recency(), recencyBase);
  return AbstractValue::unknown();
}

// ---------------------------------------------------------------------------
// Guard parsing
// ---------------------------------------------------------------------------

GuardResult Analyzer::parseGuard(const Expr& e, VariableStack& stack,
                                 const lang::MethodDecl& context) {
  frames_.push_back({&context, program_.classOf(&context)});
  GuardResult g = parseGuardExpr(e, stack);
  frames_.pop_back();
  return g;
}

GuardResult Analyzer::parseGuardExpr(const Expr& e, VariableStack& stack) {
  switch (e.kind) {
    case Expr::Kind::BoolLit:
      return GuardResult::truth(e.intValue != 0);

    case Expr::Kind::Not:
      return guardNot(parseGuardExpr(*e.target, stack));

    case Expr::Kind::Binary:
      if (e.op == lang::BinOp::And)
        return guardAnd(parseGuardExpr(*e.lhs, stack), parseGuardExpr(*e.rhs, stack));
      if (e.op == lang::BinOp::Or)
        return guardOr(parseGuardExpr(*e.lhs, stack), parseGuardExpr(*e.rhs, stack));
      if (isComparisonOp(e.op)) return parseComparison(e, stack);
      return unparsed(e);

    case Expr::Kind::MethodCall:
      return parseBooleanCall(e, stack);

    case Expr::Kind::Var:
    case Expr::Kind::FieldAccess: {
      const AbstractValue v = evalExpr(e, stack);
      if (v.kind == AbstractValue::Kind::BoolConst) return GuardResult::truth(v.boolValue);
      if (v.isParam())
        return GuardResult::of(Formula::leaf(logic::EqAtom{v.text, true}));
      return unparsed(e);
    }

    default:
      return unparsed(e);
  }
}

GuardResult Analyzer::parseComparison(const Expr& e, VariableStack& stack) {
  const Expr* lhs = e.lhs.get();
  const Expr* rhs = e.rhs.get();
  logic::CmpOp op = toCmpOp(e.op);

  // Null checks resolve to presence atoms.
  const bool lhsNull = lhs->kind == Expr::Kind::NullLit;
  const bool rhsNull = rhs->kind == Expr::Kind::NullLit;
  if (lhsNull || rhsNull) {
    if (lhsNull && rhsNull)
      return GuardResult::truth(op == logic::CmpOp::Eq);
    const Expr& other = lhsNull ? *rhs : *lhs;
    if (op != logic::CmpOp::Eq && op != logic::CmpOp::Ne) return unparsed(e);
    const AbstractValue v = evalExpr(other, stack);
    if (v.isParam()) {
      Formula presence = Formula::leaf(logic::PresentAtom{v.text});
      // `p == null` is the violation of presence.
      if (op == logic::CmpOp::Eq) return GuardResult::of(Formula::negation(presence));
      return GuardResult::of(presence);
    }
    return unparsed(e);
  }

  // String length inside a comparison: len(p) <op> n.
  auto lengthCallOn = [&](const Expr& side) -> const Expr* {
    if (side.kind != Expr::Kind::MethodCall || !side.target || !side.args.empty())
      return nullptr;
    auto it = config_.commonMethods.find(side.text);
    if (it == config_.commonMethods.end() || it->second != CommonMethod::Length)
      return nullptr;
    return side.target.get();
  };
  if (const Expr* receiver = lengthCallOn(*lhs)) {
    const AbstractValue r = evalExpr(*receiver, stack);
    const AbstractValue bound = evalExpr(*rhs, stack);
    if (r.isParam() && bound.kind == AbstractValue::Kind::IntConst)
      return GuardResult::of(Formula::leaf(logic::LenAtom{r.text, op, bound.intValue}));
    if (r.kind != AbstractValue::Kind::StrConst) return unparsed(e);
  }
  if (const Expr* receiver = lengthCallOn(*rhs)) {
    const AbstractValue r = evalExpr(*receiver, stack);
    const AbstractValue bound = evalExpr(*lhs, stack);
    if (r.isParam() && bound.kind == AbstractValue::Kind::IntConst)
      return GuardResult::of(
          Formula::leaf(logic::LenAtom{r.text, flipCmpOp(op), bound.intValue}));
    if (r.kind != AbstractValue::Kind::StrConst) return unparsed(e);
  }

  const AbstractValue l = evalExpr(*lhs, stack);
  const AbstractValue r = evalExpr(*rhs, stack);
  using K = AbstractValue::Kind;

  if (l.isParam() && r.isParam())
    return GuardResult::of(Formula::leaf(logic::CmpParamsAtom{l.text, op, r.text}));

  auto paramAgainstConst = [&](const AbstractValue& param, const AbstractValue& konst,
                               logic::CmpOp cmp) -> GuardResult {
    switch (konst.kind) {
      case K::IntConst:
        return GuardResult::of(Formula::leaf(
            logic::CmpAtom{param.text, cmp, logic::Literal{konst.intValue}}));
      case K::StrConst:
      case K::EnumConst: {
        if (cmp == logic::CmpOp::Eq)
          return GuardResult::of(
              Formula::leaf(logic::EqAtom{param.text, logic::Literal{konst.text}}));
        if (cmp == logic::CmpOp::Ne)
          return guardNot(GuardResult::of(
              Formula::leaf(logic::EqAtom{param.text, logic::Literal{konst.text}})));
        return unparsed(e);
      }
      case K::BoolConst: {
        if (cmp == logic::CmpOp::Eq)
          return GuardResult::of(
              Formula::leaf(logic::EqAtom{param.text, logic::Literal{konst.boolValue}}));
        if (cmp == logic::CmpOp::Ne)
          return guardNot(GuardResult::of(
              Formula::leaf(logic::EqAtom{param.text, logic::Literal{konst.boolValue}})));
        return unparsed(e);
      }
      default:
        return unparsed(e);
    }
  };

  if (l.isParam() && !r.isUnknown() && r.kind != K::Collection)
    return paramAgainstConst(l, r, op);
  if (r.isParam() && !l.isUnknown() && l.kind != K::Collection)
    return paramAgainstConst(r, l, flipCmpOp(op));

  // Both sides decided: fold.
  {
    const auto ll = literalOf(l);
    const auto rl = literalOf(r);
    if (ll && rl) {
      if (logic::isNumeric(*ll) && logic::isNumeric(*rl))
        return GuardResult::truth(
            logic::applyCmp(op, logic::asNumber(*ll), logic::asNumber(*rl)));
      if (op == logic::CmpOp::Eq)
        return GuardResult::truth(logic::literalEquals(*ll, *rl));
      if (op == logic::CmpOp::Ne)
        return GuardResult::truth(!logic::literalEquals(*ll, *rl));
    }
  }
  return unparsed(e);
}

GuardResult Analyzer::parseBooleanCall(const Expr& e, VariableStack& stack) {
  // Configured common methods with machine-readable output.
  auto common = e.target ? config_.commonMethods.find(e.text) : config_.commonMethods.end();
  if (e.target && common != config_.commonMethods.end()) {
    switch (common->second) {
      case CommonMethod::Equals: {
        if (e.args.size() != 1) return unparsed(e);
        const AbstractValue l = evalExpr(*e.target, stack);
        const AbstractValue r = evalExpr(*e.args[0], stack);
        if (l.isParam() && r.isParam())
          return GuardResult::of(
              Formula::leaf(logic::CmpParamsAtom{l.text, logic::CmpOp::Eq, r.text}));
        auto mk = [&](const AbstractValue& param, const AbstractValue& konst) -> GuardResult {
          auto lit = literalOf(konst);
          if (!lit) return unparsed(e);
          return GuardResult::of(Formula::leaf(logic::EqAtom{param.text, *lit}));
        };
        if (l.isParam()) return mk(l, r);
        if (r.isParam()) return mk(r, l);
        const auto ll = literalOf(l), rl = literalOf(r);
        if (ll && rl) return GuardResult::truth(logic::literalEquals(*ll, *rl));
        return unparsed(e);
      }
      case CommonMethod::IsEmpty: {
        const AbstractValue t = evalExpr(*e.target, stack);
        if (t.isParam())
          return GuardResult::of(
              Formula::leaf(logic::LenAtom{t.text, logic::CmpOp::Eq, 0}));
        if (t.kind == AbstractValue::Kind::StrConst)
          return GuardResult::truth(t.text.empty());
        if (t.kind == AbstractValue::Kind::Collection)
          return GuardResult::truth(t.elements.empty());
        return unparsed(e);
      }
      case CommonMethod::Contains: {
        if (e.args.size() != 1) return unparsed(e);
        const AbstractValue t = evalExpr(*e.target, stack);
        const AbstractValue arg = evalExpr(*e.args[0], stack);
        if (t.kind == AbstractValue::Kind::Collection && arg.isParam())
          return GuardResult::of(
              Formula::leaf(logic::InSetAtom{arg.text, t.elements}));
        if (t.kind == AbstractValue::Kind::Collection) {
          if (auto lit = literalOf(arg)) {
            const bool found = std::any_of(
                t.elements.begin(), t.elements.end(),
                [&](const logic::Literal& m) { return logic::literalEquals(m, *lit); });
            return GuardResult::truth(found);
          }
        }
        return unparsed(e);
      }
      case CommonMethod::StartsWith: {
        const AbstractValue t = evalExpr(*e.target, stack);
        if (t.kind == AbstractValue::Kind::StrConst && e.args.size() == 1) {
          const AbstractValue arg = evalExpr(*e.args[0], stack);
          if (arg.kind == AbstractValue::Kind::StrConst)
            return GuardResult::truth(t.text.rfind(arg.text, 0) == 0);
        }
        return unparsed(e);
      }
      case CommonMethod::Length:
        return unparsed(e);  // meaningful only inside a comparison
    }
  }

  // Boolean getter over a parameter.
  if (e.target && e.args.empty() && lang::getterField(e.text)) {
    const AbstractValue v = evalCall(e, stack);
    if (v.isParam()) return GuardResult::of(Formula::leaf(logic::EqAtom{v.text, true}));
    if (v.kind == AbstractValue::Kind::BoolConst) return GuardResult::truth(v.boolValue);
    return unparsed(e);
  }

  // Boolean-returning program method: summarize the conditions that make it
  // return true.
  const lang::MethodDecl* callee = nullptr;
  const lang::ClassDecl* calleeClass = nullptr;
  if (!e.target && !frames_.empty() && frames_.back().klass) {
    callee = program_.findMethod(frames_.back().klass->name, e.text);
    calleeClass = callee ? frames_.back().klass : nullptr;
  } else if (e.target && e.target->kind == Expr::Kind::Var &&
             !stack.lookup(e.target->text) && program_.findClass(e.target->text)) {
    callee = program_.findMethod(e.target->text, e.text);
    calleeClass = callee ? program_.findClass(e.target->text) : nullptr;
  }
  if (callee && callee->returnsBoolean()) {
    std::vector<AbstractValue> args;
    for (const lang::ExprPtr& a : e.args) args.push_back(evalExpr(*a, stack));
    (void)calleeClass;
    return summaryOf(*callee, std::move(args), e.span, sourceSlice(e), stack);
  }

  // Unresolvable boolean call: keep the source text.
  if (e.target || !callee) {
    // Evaluate arguments for their parameter-access side effects.
    for (const lang::ExprPtr& a : e.args) evalExpr(*a, stack);
    return unparsed(e);
  }
  return unparsed(e);
}

GuardResult Analyzer::booleanSummary(const lang::MethodDecl& m,
                                     std::vector<AbstractValue> args) {
  VariableStack seed;
  return summaryOf(m, std::move(args), m.span, m.name + "(...)", seed);
}

GuardResult Analyzer::summaryOf(const lang::MethodDecl& callee,
                                std::vector<AbstractValue> args, const lang::Span& span,
                                const std::string& callText,
                                VariableStack& callerStack) {
  auto bail = [&](Diagnostic::Kind kind, const std::string& why) {
    note(kind, span, why);
    note(Diagnostic::Kind::Unparsed, span, callText);
    return GuardResult::of(Formula::leaf(logic::UnparsedAtom{callText}));
  };
  if (std::find(callPath_.begin(), callPath_.end(), &callee) != callPath_.end())
    return bail(Diagnostic::Kind::RecursiveCut, callee.name);
  if (depth_ + 1 > config_.maxDepth)
    return bail(Diagnostic::Kind::TruncatedCall,
                callee.name + " beyond depth " + std::to_string(config_.maxDepth));

  VariableStack calleeStack;
  for (size_t i = 0; i < callee.params.size(); ++i)
    calleeStack.declare(callee.params[i].name,
                        i < args.size() ? std::move(args[i]) : AbstractValue::unknown());
  calleeStack.appendRecency(callerStack.recency(), 0);
  const size_t recencyBase = calleeStack.recency().size();

  ++depth_;
  callPath_.push_back(&callee);
  frames_.push_back({&callee, program_.classOf(&callee)});

  std::vector<GuardResult> trueConds;
  GuardResult entryCond = GuardResult::truth(true);
  const SummaryStatus status =
      summarySeq(callee.body->body, calleeStack, entryCond, trueConds);

  frames_.pop_back();
  callPath_.pop_back();
  --depth_;
  callerStack.appendRecency(calleeStack.recency(), recencyBase);

  if (status == SummaryStatus::Unsupported) {
    note(Diagnostic::Kind::Unparsed, span, callText);
    return GuardResult::of(Formula::leaf(logic::UnparsedAtom{callText}));
  }
  if (trueConds.empty()) return GuardResult::truth(false);
  GuardResult out = GuardResult::truth(false);
  for (GuardResult& c : trueConds) out = guardOr(std::move(out), std::move(c));
  return out;
}

Analyzer::SummaryStatus Analyzer::summarySeq(const std::vector<lang::StmtPtr>& stmts,
                                             VariableStack& stack, GuardResult& pathCond,
                                             std::vector<GuardResult>& trueConds) {
  for (const lang::StmtPtr& sp : stmts) {
    const SummaryStatus status = summaryStmt(*sp, stack, pathCond, trueConds);
    if (status != SummaryStatus::FellThrough) return status;
  }
  return SummaryStatus::FellThrough;
}

// Collects, per path that reaches `return true`, the conjunction of its
// branch conditions. Switch and loops are outside the summary subset.
Analyzer::SummaryStatus Analyzer::summaryStmt(const Stmt& s, VariableStack& stack,
                                              GuardResult& pathCond,
                                              std::vector<GuardResult>& trueConds) {
  switch (s.kind) {
    case Stmt::Kind::Block: {
      stack.pushScope();
      const SummaryStatus status = summarySeq(s.body, stack, pathCond, trueConds);
      stack.popScope();
      return status;
    }
    case Stmt::Kind::LocalDecl:
      stack.declare(s.name, s.expr ? evalExpr(*s.expr, stack) : AbstractValue::unknown());
      return SummaryStatus::FellThrough;
    case Stmt::Kind::Assign:
      stack.assign(s.name, evalExpr(*s.expr, stack));
      return SummaryStatus::FellThrough;
    case Stmt::Kind::ExprStmt:
      evalExpr(*s.expr, stack);
      return SummaryStatus::FellThrough;

    case Stmt::Kind::Throw:
      // Reached while evaluating the guard: an invalid state under the
      // caller guards plus this path's conditions.
      if (pathCond.kind == GuardResult::Kind::Formula) {
        guards_.push_back(*pathCond.formula);
        emitInvalidState(s);
        guards_.pop_back();
      } else if (pathCond.kind == GuardResult::Kind::True) {
        emitInvalidState(s);
      }
      return SummaryStatus::Terminated;

    case Stmt::Kind::Return: {
      if (!s.expr) return SummaryStatus::Terminated;
      if (s.expr->kind == Expr::Kind::BoolLit) {
        if (s.expr->intValue != 0) trueConds.push_back(pathCond);
        return SummaryStatus::Terminated;
      }
      GuardResult g = parseGuardExpr(*s.expr, stack);
      trueConds.push_back(guardAnd(pathCond, std::move(g)));
      return SummaryStatus::Terminated;
    }

    case Stmt::Kind::If: {
      const GuardResult g = parseGuardExpr(*s.expr, stack);

      auto walkArm = [&](const Stmt& arm, GuardResult armCond) -> SummaryStatus {
        VariableStack armStack = stack;
        armStack.pushScope();
        GuardResult cond = std::move(armCond);
        SummaryStatus status;
        if (arm.kind == Stmt::Kind::Block) {
          status = summarySeq(arm.body, armStack, cond, trueConds);
        } else {
          status = summaryStmt(arm, armStack, cond, trueConds);
        }
        stack.appendRecency(armStack.recency(), stack.recency().size());
        return status;
      };

      if (g.kind == GuardResult::Kind::True) return walkArm(*s.thenStmt, pathCond);
      if (g.kind == GuardResult::Kind::False)
        return s.elseStmt ? walkArm(*s.elseStmt, pathCond) : SummaryStatus::FellThrough;

      const SummaryStatus thenStatus = walkArm(*s.thenStmt, guardAnd(pathCond, g));
      if (thenStatus == SummaryStatus::Unsupported) return thenStatus;
      SummaryStatus elseStatus = SummaryStatus::FellThrough;
      if (s.elseStmt) {
        elseStatus = walkArm(*s.elseStmt, guardAnd(pathCond, guardNot(g)));
        if (elseStatus == SummaryStatus::Unsupported) return elseStatus;
      }

      const bool thenTerm = thenStatus == SummaryStatus::Terminated;
      const bool elseTerm = elseStatus == SummaryStatus::Terminated;
      if (thenTerm && s.elseStmt && elseTerm) return SummaryStatus::Terminated;
      // Early-return arms constrain the continuation.
      if (thenTerm && !s.elseStmt) pathCond = guardAnd(pathCond, guardNot(g));
      if (elseTerm && s.elseStmt && !thenTerm) pathCond = guardAnd(pathCond, g);
      return SummaryStatus::FellThrough;
    }

    default:
      return SummaryStatus::Unsupported;
  }
}

// ---------------------------------------------------------------------------
// Statement walking
// ---------------------------------------------------------------------------

AnalysisResult Analyzer::analyzeController(const std::string& rootRef) {
  const size_t dot = rootRef.find('.');
  if (dot == std::string::npos)
    throw lang::ResolveError("controller reference must be Class.method: " + rootRef);
  const std::string clsName = rootRef.substr(0, dot);
  const std::string methodName = rootRef.substr(dot + 1);
  const lang::MethodDecl* root = program_.findMethod(clsName, methodName);
  if (!root) throw lang::ResolveError("unresolved controller " + rootRef);

  constraints_.clear();
  diagnostics_.clear();
  guards_.clear();
  callPath_.clear();
  depth_ = 0;

  VariableStack stack;
  for (const lang::Param& p : root->params) {
    const std::string base = p.type.substr(0, p.type.find('<'));
    const bool isModel = std::find(config_.requestModels.begin(),
                                   config_.requestModels.end(),
                                   base) != config_.requestModels.end();
    stack.declare(p.name, isModel ? AbstractValue::paramRef("") : AbstractValue::unknown());
  }

  frames_.push_back({root, program_.findClass(clsName)});
  callPath_.push_back(root);
  walkStmts(root->body->body, stack);
  callPath_.pop_back();
  frames_.pop_back();

  AnalysisResult result;
  finalizeConstraints(result.constraints);
  result.diagnostics = diagnostics_;
  result.callGraph = buildCallGraph(program_, rootRef, config_.maxDepth);
  return result;
}

bool Analyzer::walkStmts(const std::vector<lang::StmtPtr>& stmts, VariableStack& stack) {
  for (const lang::StmtPtr& s : stmts) {
    if (walkStmt(*s, stack)) return true;  // rest is unreachable
  }
  return false;
}

bool Analyzer::walkBranch(const Stmt& s, VariableStack& stack) {
  stack.pushScope();
  const bool terminated = walkStmt(s, stack);
  stack.popScope();
  return terminated;
}

bool Analyzer::walkStmt(const Stmt& s, VariableStack& stack) {
  switch (s.kind) {
    case Stmt::Kind::Block: {
      stack.pushScope();
      const bool terminated = walkStmts(s.body, stack);
      stack.popScope();
      return terminated;
    }

    case Stmt::Kind::LocalDecl:
      stack.declare(s.name, s.expr ? evalExpr(*s.expr, stack) : AbstractValue::unknown());
      return false;

    case Stmt::Kind::Assign:
      stack.assign(s.name, evalExpr(*s.expr, stack));
      return false;

    case Stmt::Kind::ExprStmt: {
      const Expr& e = *s.expr;
      if (e.kind == Expr::Kind::MethodCall &&
          std::find(config_.invalidStatePatterns.begin(),
                    config_.invalidStatePatterns.end(),
                    e.text) != config_.invalidStatePatterns.end()) {
        for (const lang::ExprPtr& a : e.args) evalExpr(*a, stack);
        emitInvalidState(s);
        return false;  // deferred error: execution continues
      }
      evalExpr(e, stack);
      return false;
    }

    case Stmt::Kind::Throw:
      if (s.expr) evalExpr(*s.expr, stack);
      emitInvalidState(s);
      return true;

    case Stmt::Kind::Return:
      if (s.expr) evalExpr(*s.expr, stack);
      return true;

    case Stmt::Kind::Break:
      return false;

    case Stmt::Kind::If: {
      bool terminated = false;
      walkIf(s, stack, terminated);
      return terminated;
    }

    case Stmt::Kind::Switch: {
      bool terminated = false;
      walkSwitch(s, stack, terminated);
      return terminated;
    }

    case Stmt::Kind::For: {
      stack.pushScope();
      if (s.forInit) walkStmt(*s.forInit, stack);
      if (s.expr) evalExpr(*s.expr, stack);
      // Body analyzed once; writes do not survive the join (the loop may not
      // run at all).
      const VariableStack base = stack;
      walkBranch(*s.loopBody, stack);
      if (s.forUpdate) walkStmt(*s.forUpdate, stack);
      VariableStack bodyOut = std::move(stack);
      stack = base;
      joinBranches(stack, base, {std::move(bodyOut)}, /*coversAllPaths=*/false);
      stack.popScope();
      return false;
    }

    case Stmt::Kind::ForEach: {
      stack.pushScope();
      const AbstractValue iterable = evalExpr(*s.expr, stack);
      // Iterating an array-valued parameter: conditions inside the body
      // apply to the element paths of that parameter.
      AbstractValue element = AbstractValue::unknown();
      if (iterable.isParam()) element = iterable;
      stack.declare(s.name, element);
      const VariableStack base = stack;
      walkBranch(*s.loopBody, stack);
      VariableStack bodyOut = std::move(stack);
      stack = base;
      joinBranches(stack, base, {std::move(bodyOut)}, /*coversAllPaths=*/false);
      stack.popScope();
      return false;
    }
  }
  return false;
}

void Analyzer::walkIf(const Stmt& s, VariableStack& stack, bool& terminated) {
  const GuardResult g = parseGuardExpr(*s.expr, stack);

  if (g.kind == GuardResult::Kind::True) {
    terminated = walkBranch(*s.thenStmt, stack);
    return;
  }
  if (g.kind == GuardResult::Kind::False) {
    terminated = s.elseStmt ? walkBranch(*s.elseStmt, stack) : false;
    return;
  }

  const VariableStack base = stack;

  guards_.push_back(*g.formula);
  const bool thenTerm = walkBranch(*s.thenStmt, stack);
  guards_.pop_back();
  VariableStack thenOut = std::move(stack);

  stack = base;
  bool elseTerm = false;
  if (s.elseStmt) {
    guards_.push_back(Formula::negation(*g.formula));
    elseTerm = walkBranch(*s.elseStmt, stack);
    guards_.pop_back();
  }
  VariableStack elseOut = std::move(stack);

  stack = base;
  std::vector<VariableStack> outcomes;
  outcomes.push_back(std::move(thenOut));
  outcomes.push_back(std::move(elseOut));
  joinBranches(stack, base, std::move(outcomes), /*coversAllPaths=*/s.elseStmt != nullptr);
  terminated = thenTerm && elseTerm;
}

void Analyzer::walkSwitch(const Stmt& s, VariableStack& stack, bool& terminated) {
  const AbstractValue subject = evalExpr(*s.expr, stack);

  auto caseGuard = [&](const lang::SwitchCase& c) -> GuardResult {
    if (!subject.isParam()) {
      const std::string text = sourceSlice(*s.expr) + " == " + c.label;
      note(Diagnostic::Kind::Unparsed, c.span, text);
      return GuardResult::of(Formula::leaf(logic::UnparsedAtom{text}));
    }
    if (!c.label.empty() && c.label.front() == '"')
      return GuardResult::of(Formula::leaf(
          logic::EqAtom{subject.text, c.label.substr(1, c.label.size() - 2)}));
    if (!c.label.empty() &&
        (std::isdigit(static_cast<unsigned char>(c.label.front())) || c.label.front() == '-'))
      return GuardResult::of(Formula::leaf(
          logic::CmpAtom{subject.text, logic::CmpOp::Eq, std::stoll(c.label)}));
    // Enum constant.
    return GuardResult::of(Formula::leaf(logic::EqAtom{subject.text, c.label}));
  };

  const VariableStack base = stack;
  std::vector<VariableStack> outcomes;
  bool sawDefault = false;
  bool allTerminate = true;

  std::vector<Formula> caseFormulas;
  for (const lang::SwitchCase& c : s.cases)
    if (!c.isDefault) {
      const GuardResult g = caseGuard(c);
      if (g.kind == GuardResult::Kind::Formula) caseFormulas.push_back(*g.formula);
    }

  size_t caseIdx = 0;
  for (const lang::SwitchCase& c : s.cases) {
    GuardResult g;
    if (c.isDefault) {
      sawDefault = true;
      // The default branch holds when no case label matched.
      GuardResult none = GuardResult::truth(true);
      for (const Formula& f : caseFormulas)
        none = guardAnd(std::move(none), GuardResult::of(Formula::negation(f)));
      g = std::move(none);
    } else {
      g = caseGuard(c);
      ++caseIdx;
    }

    stack = base;
    stack.pushScope();
    const bool hasGuard = g.kind == GuardResult::Kind::Formula;
    if (hasGuard) guards_.push_back(*g.formula);
    bool term = false;
    for (const lang::StmtPtr& b : c.body) {
      if (walkStmt(*b, stack)) {
        term = true;
        break;
      }
    }
    if (hasGuard) guards_.pop_back();
    stack.popScope();
    outcomes.push_back(std::move(stack));
    allTerminate = allTerminate && term;
  }

  stack = base;
  joinBranches(stack, base, std::move(outcomes), /*coversAllPaths=*/sawDefault);
  terminated = sawDefault && allTerminate && !s.cases.empty();
}

void Analyzer::joinBranches(VariableStack& stack, const VariableStack& base,
                            std::vector<VariableStack> branchOutcomes,
                            bool coversAllPaths) {
  const auto baseFlat = base.flatten();
  std::vector<std::map<std::string, AbstractValue>> flats;
  flats.reserve(branchOutcomes.size());
  for (const VariableStack& b : branchOutcomes) flats.push_back(b.flatten());

  for (const auto& [name, baseValue] : baseFlat) {
    size_t writers = 0;
    const AbstractValue* lastWrite = nullptr;
    for (const auto& flat : flats) {
      auto it = flat.find(name);
      if (it != flat.end() && !(it->second == baseValue)) {
        ++writers;
        lastWrite = &it->second;
      }
    }
    if (writers == 0) continue;
    if (coversAllPaths && writers == flats.size()) {
      // Exclusive branches all wrote: the most recent modification wins.
      stack.assign(name, *lastWrite);
    } else {
      // Written on some paths only: nothing is assumed past the join.
      stack.assign(name, AbstractValue::unknown());
    }
  }

  const size_t recencyBase = base.recency().size();
  for (const VariableStack& b : branchOutcomes)
    stack.appendRecency(b.recency(), recencyBase);
}

void Analyzer::emitInvalidState(const Stmt& site) {
  if (guards_.empty()) {
    note(Diagnostic::Kind::Unparsed, site.span,
         "invalid state with no enclosing condition (request always fails)");
    return;
  }
  logic::Constraint c;
  c.precondition = normalize(Formula::conjunction(guards_));
  c.origin = logic::Origin::Code;
  const Frame& f = frames_.back();
  const lang::ClassDecl* cls = f.klass;
  std::string file = "<unit>";
  if (cls) {
    for (const lang::Unit& u : program_.units()) {
      for (const lang::ClassDecl& uc : u.classes)
        if (&uc == cls) file = u.fileName;
    }
  }
  c.sourceRef = file + ":" + std::to_string(site.span.line);
  constraints_.push_back(std::move(c));
}

void Analyzer::finalizeConstraints(std::vector<logic::Constraint>& out) {
  // Structural dedup first.
  std::set<std::string> seen;
  std::vector<logic::Constraint> unique;
  for (logic::Constraint& c : constraints_) {
    const std::string key = functionalForm(c.precondition);
    if (seen.insert(key).second) unique.push_back(std::move(c));
  }

  // Equivalence dedup for complete constraints.
  std::vector<logic::Constraint> complete;
  std::vector<logic::Constraint> partial;
  for (logic::Constraint& c : unique) {
    (c.partial() ? partial : complete).push_back(std::move(c));
  }
  const logic::Domain domain = logic::Domain::forConstraints(complete);
  std::vector<logic::Constraint> kept;
  for (logic::Constraint& c : complete) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const logic::Constraint& k) {
      return logic::equivalent(k, c, domain);
    });
    if (!dup) kept.push_back(std::move(c));
  }

  out = std::move(kept);
  for (logic::Constraint& c : partial) out.push_back(std::move(c));
  for (logic::Constraint& c : out) c.klass = logic::classify(c);
}

}  // namespace cminer::analysis
