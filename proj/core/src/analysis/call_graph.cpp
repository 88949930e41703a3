#include "cminer/analysis/call_graph.hpp"

#include <set>

namespace cminer::analysis {

using lang::Expr;
using lang::Stmt;

int CallGraph::findNode(const std::string& className, const std::string& methodName) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].className == className && nodes[i].methodName == methodName)
      return static_cast<int>(i);
  return -1;
}

namespace {

struct CallSite {
  std::string className;  // empty: unresolved / external
  std::string methodName;
  const Expr* call = nullptr;
};

class Builder {
 public:
  Builder(const lang::Program& p, CallGraph& g) : program_(p), graph_(g) {}

  void run(const std::string& rootRef) {
    const size_t dot = rootRef.find('.');
    if (dot == std::string::npos)
      throw lang::ResolveError("call-graph root must be Class.method: " + rootRef);
    const std::string cls = rootRef.substr(0, dot);
    const std::string method = rootRef.substr(dot + 1);
    if (!program_.findMethod(cls, method))
      throw lang::ResolveError("unresolved call-graph root " + rootRef);
    graph_.root = ensureNode(cls, method, false, 0);
    std::set<const lang::MethodDecl*> onPath;
    expand(cls, method, 0, onPath);
  }

 private:
  int ensureNode(const std::string& cls, const std::string& method, bool external,
                 int depth) {
    const int found = graph_.findNode(cls, method);
    if (found >= 0) return found;
    graph_.nodes.push_back({cls, method, external, depth});
    return static_cast<int>(graph_.nodes.size()) - 1;
  }

  void expand(const std::string& cls, const std::string& method, int depth,
              std::set<const lang::MethodDecl*>& onPath) {
    const lang::MethodDecl* decl = program_.findMethod(cls, method);
    if (!decl) return;
    const int callerId = ensureNode(cls, method, false, depth);
    onPath.insert(decl);

    std::vector<CallSite> sites;
    collectStmt(*decl->body, cls, sites);

    for (const CallSite& site : sites) {
      CallGraph::Edge edge;
      edge.caller = callerId;
      edge.line = site.call->span.line;
      edge.col = site.call->span.col;
      for (size_t i = 0; i < site.call->args.size(); ++i) {
        if (i) edge.argBinding += ", ";
        edge.argBinding += lang::printExpr(*site.call->args[i]);
      }

      if (site.className.empty()) {
        edge.callee = ensureNode("", site.methodName, true, depth + 1);
        graph_.edges.push_back(std::move(edge));
        continue;
      }

      const lang::MethodDecl* calleeDecl =
          program_.findMethod(site.className, site.methodName);
      if (!calleeDecl) {
        edge.callee = ensureNode("", site.methodName, true, depth + 1);
        graph_.edges.push_back(std::move(edge));
        continue;
      }

      if (onPath.contains(calleeDecl)) {
        edge.callee = ensureNode(site.className, site.methodName, false, depth + 1);
        edge.recursiveCut = true;
        graph_.edges.push_back(std::move(edge));
        continue;
      }
      if (depth + 1 > graph_.maxDepth) {
        edge.callee = ensureNode(site.className, site.methodName, false, depth + 1);
        edge.truncated = true;
        graph_.edges.push_back(std::move(edge));
        continue;
      }

      edge.callee = ensureNode(site.className, site.methodName, false, depth + 1);
      graph_.edges.push_back(std::move(edge));
      expand(site.className, site.methodName, depth + 1, onPath);
    }
    onPath.erase(decl);
  }

  void collectStmt(const Stmt& s, const std::string& currentClass,
                   std::vector<CallSite>& out) {
    auto visitPtr = [&](const lang::StmtPtr& p) {
      if (p) collectStmt(*p, currentClass, out);
    };
    if (s.expr) collectExpr(*s.expr, currentClass, out);
    for (const lang::StmtPtr& c : s.body) collectStmt(*c, currentClass, out);
    visitPtr(s.thenStmt);
    visitPtr(s.elseStmt);
    visitPtr(s.forInit);
    visitPtr(s.forUpdate);
    visitPtr(s.loopBody);
    for (const lang::SwitchCase& c : s.cases)
      for (const lang::StmtPtr& b : c.body) collectStmt(*b, currentClass, out);
  }

  void collectExpr(const Expr& e, const std::string& currentClass,
                   std::vector<CallSite>& out) {
    if (e.target) collectExpr(*e.target, currentClass, out);
    if (e.lhs) collectExpr(*e.lhs, currentClass, out);
    if (e.rhs) collectExpr(*e.rhs, currentClass, out);
    for (const lang::ExprPtr& a : e.args) collectExpr(*a, currentClass, out);

    if (e.kind != Expr::Kind::MethodCall) return;

    if (!e.target) {  // bare call: method of the current class
      out.push_back({currentClass, e.text, &e});
      return;
    }
    // Class-qualified call.
    if (e.target->kind == Expr::Kind::Var && program_.findClass(e.target->text)) {
      out.push_back({e.target->text, e.text, &e});
      return;
    }
    // Getter-shaped projections and common methods are not call-graph edges.
    if (lang::getterField(e.text) && e.args.empty()) return;
    static const std::set<std::string> kIgnored = {"equals",   "length",  "isEmpty",
                                                   "contains", "startsWith", "add",
                                                   "size",     "get"};
    if (kIgnored.contains(e.text)) return;
    out.push_back({"", e.text, &e});
  }

  const lang::Program& program_;
  CallGraph& graph_;
};

}  // namespace

CallGraph buildCallGraph(const lang::Program& p, const std::string& rootRef, int maxDepth) {
  CallGraph g;
  g.maxDepth = maxDepth;
  Builder(p, g).run(rootRef);
  return g;
}

}  // namespace cminer::analysis
