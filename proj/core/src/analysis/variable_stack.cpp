#include "cminer/analysis/variable_stack.hpp"

#include <stdexcept>

namespace cminer::analysis {

void VariableStack::popScope() {
  if (scopes_.size() <= 1) throw std::logic_error("popScope on the root scope");
  scopes_.pop_back();
}

void VariableStack::declare(const std::string& name, AbstractValue v) {
  scopes_.back()[name] = std::move(v);
}

void VariableStack::assign(const std::string& name, AbstractValue v) {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto found = it->find(name);
    if (found != it->end()) {
      found->second = std::move(v);
      return;
    }
  }
  scopes_.back()[name] = std::move(v);
}

const AbstractValue* VariableStack::lookup(const std::string& name) const {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto found = it->find(name);
    if (found != it->end()) return &found->second;
  }
  return nullptr;
}

void VariableStack::noteParamAccess(const std::string& path) {
  if (path.empty()) return;  // the request root is not a parameter
  if (!recency_.empty() && recency_.back() == path) return;
  recency_.push_back(path);
}

void VariableStack::appendRecency(const std::vector<std::string>& paths, size_t from) {
  for (size_t i = from; i < paths.size(); ++i) noteParamAccess(paths[i]);
}

std::map<std::string, AbstractValue> VariableStack::flatten() const {
  std::map<std::string, AbstractValue> out;
  for (const auto& scope : scopes_)
    for (const auto& [name, value] : scope) out[name] = value;
  return out;
}

}  // namespace cminer::analysis
