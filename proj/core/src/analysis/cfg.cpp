#include "cminer/analysis/cfg.hpp"

#include <set>

namespace cminer::analysis {

using lang::Stmt;

std::vector<const Cfg::Edge*> Cfg::outEdges(int node) const {
  std::vector<const Edge*> out;
  for (const Edge& e : edges)
    if (e.from == node) out.push_back(&e);
  return out;
}

bool Cfg::allReachable() const {
  std::set<int> seen{entry};
  std::vector<int> work{entry};
  while (!work.empty()) {
    const int n = work.back();
    work.pop_back();
    for (const Edge* e : outEdges(n))
      if (seen.insert(e->to).second) work.push_back(e->to);
  }
  return seen.size() == nodes.size();
}

namespace {

class Builder {
 public:
  explicit Builder(Cfg& cfg) : cfg_(cfg) {}

  int addNode(Cfg::NodeKind kind, const Stmt* stmt) {
    const int id = static_cast<int>(cfg_.nodes.size());
    cfg_.nodes.push_back({id, kind, stmt});
    return id;
  }

  void addEdge(int from, int to, Cfg::EdgeKind kind, std::string label = {}) {
    cfg_.edges.push_back({from, to, kind, std::move(label)});
  }

  // Wires `stmts` sequentially; returns the entry node (cont if empty).
  int buildSeq(const std::vector<lang::StmtPtr>& stmts, int cont) {
    int next = cont;
    for (size_t i = stmts.size(); i-- > 0;) next = buildStmt(*stmts[i], next);
    return next;
  }

  int buildStmt(const Stmt& s, int cont) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        return buildSeq(s.body, cont);

      case Stmt::Kind::If: {
        const int node = addNode(Cfg::NodeKind::Statement, &s);
        const int thenEntry = buildStmt(*s.thenStmt, cont);
        addEdge(node, thenEntry, Cfg::EdgeKind::True);
        const int elseEntry = s.elseStmt ? buildStmt(*s.elseStmt, cont) : cont;
        addEdge(node, elseEntry, Cfg::EdgeKind::False);
        return node;
      }

      case Stmt::Kind::Switch: {
        const int node = addNode(Cfg::NodeKind::Statement, &s);
        bool hasDefault = false;
        for (const lang::SwitchCase& c : s.cases) {
          const int body = buildSeq(c.body, cont);
          if (c.isDefault) {
            hasDefault = true;
            addEdge(node, body, Cfg::EdgeKind::Default);
          } else {
            addEdge(node, body, Cfg::EdgeKind::Case, c.label);
          }
        }
        if (!hasDefault) addEdge(node, cont, Cfg::EdgeKind::Default);
        return node;
      }

      case Stmt::Kind::For:
      case Stmt::Kind::ForEach: {
        const int node = addNode(Cfg::NodeKind::Statement, &s);
        // The body is analyzed exactly once, then control falls through; no
        // back edge.
        const int body = buildStmt(*s.loopBody, cont);
        addEdge(node, body, Cfg::EdgeKind::BodyOnce);
        addEdge(node, cont, Cfg::EdgeKind::Next);
        return node;
      }

      case Stmt::Kind::Return: {
        const int node = addNode(Cfg::NodeKind::Statement, &s);
        addEdge(node, cfg_.exit, Cfg::EdgeKind::Next);
        return node;
      }

      case Stmt::Kind::Throw: {
        const int node = addNode(Cfg::NodeKind::Statement, &s);
        if (cfg_.invalidSink < 0) {
          cfg_.invalidSink = addNode(Cfg::NodeKind::InvalidSink, nullptr);
          addEdge(cfg_.invalidSink, cfg_.exit, Cfg::EdgeKind::Next);
        }
        addEdge(node, cfg_.invalidSink, Cfg::EdgeKind::Next);
        return node;
      }

      default: {
        const int node = addNode(Cfg::NodeKind::Statement, &s);
        addEdge(node, cont, Cfg::EdgeKind::Next);
        return node;
      }
    }
  }

 private:
  Cfg& cfg_;
};

}  // namespace

Cfg buildCfg(const lang::MethodDecl& m) {
  Cfg cfg;
  cfg.invalidSink = -1;  // created on the first throw
  Builder b(cfg);
  cfg.entry = b.addNode(Cfg::NodeKind::Entry, nullptr);
  cfg.exit = b.addNode(Cfg::NodeKind::Exit, nullptr);
  const int first = b.buildSeq(m.body->body, cfg.exit);
  b.addEdge(cfg.entry, first, Cfg::EdgeKind::Next);
  return cfg;
}

}  // namespace cminer::analysis
