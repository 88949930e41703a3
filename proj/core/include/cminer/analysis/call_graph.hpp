#pragma once

#include <string>
#include <vector>

#include "cminer/lang/program.hpp"

namespace cminer::analysis {

/// Depth-limited static call graph rooted at a controller method. Edges
/// record the rendered argument bindings of their call site; recursion is
/// cut at the first revisit along a path, and calls past maxDepth are kept
/// as truncated edges.
struct CallGraph {
  struct Node {
    std::string className;  // empty for external callees
    std::string methodName;
    bool external = false;
    int depth = 0;

    std::string qualified() const {
      return className.empty() ? methodName : className + "." + methodName;
    }
  };

  struct Edge {
    int caller = -1;
    int callee = -1;
    int line = 0;
    int col = 0;
    std::string argBinding;
    bool truncated = false;
    bool recursiveCut = false;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
  int root = 0;
  int maxDepth = 15;

  int findNode(const std::string& className, const std::string& methodName) const;
};

CallGraph buildCallGraph(const lang::Program& p, const std::string& rootRef,
                         int maxDepth = 15);

}  // namespace cminer::analysis
