#pragma once

#include <string>
#include <vector>

#include "cminer/lang/ast.hpp"

namespace cminer::analysis {

/// Per-method control-flow graph. Branch edges carry their labels; loops get
/// a single body-once edge plus fallthrough; throws route to a dedicated
/// invalid-state sink.
struct Cfg {
  enum class NodeKind { Entry, Exit, InvalidSink, Statement };
  enum class EdgeKind { Next, True, False, Case, Default, BodyOnce };

  struct Node {
    int id = 0;
    NodeKind kind = NodeKind::Statement;
    const lang::Stmt* stmt = nullptr;
  };
  struct Edge {
    int from = 0;
    int to = 0;
    EdgeKind kind = EdgeKind::Next;
    std::string caseLabel;
  };

  int entry = 0;
  int exit = 0;
  int invalidSink = 0;
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::vector<const Edge*> outEdges(int node) const;
  /// True when every node is reachable from the entry.
  bool allReachable() const;
};

Cfg buildCfg(const lang::MethodDecl& m);

}  // namespace cminer::analysis
