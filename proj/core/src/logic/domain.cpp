#include "cminer/logic/domain.hpp"

#include <algorithm>

namespace cminer::logic {

bool isAbsent(const AssignedValue& v) { return std::holds_alternative<Absent>(v); }

namespace {

const AssignedValue& lookup(const Assignment& a, const std::string& path) {
  auto it = a.values.find(path);
  if (it == a.values.end())
    throw MissingAssignmentError("no assignment for parameter '" + path + "'");
  return it->second;
}

std::optional<double> numericValue(const AssignedValue& v) {
  if (const auto* lit = std::get_if<Literal>(&v)) {
    if (isNumeric(*lit)) return asNumber(*lit);
  }
  return std::nullopt;
}

std::optional<std::int64_t> lengthOf(const AssignedValue& v) {
  if (const auto* lit = std::get_if<Literal>(&v)) {
    if (const auto* s = std::get_if<std::string>(lit))
      return static_cast<std::int64_t>(s->size());
    return std::nullopt;
  }
  if (const auto* comp = std::get_if<Composite>(&v)) return comp->size;
  return std::nullopt;
}

struct AtomEval {
  const Assignment& a;

  bool operator()(const PresentAtom& x) const { return !isAbsent(lookup(a, x.path)); }

  bool operator()(const EqAtom& x) const {
    const AssignedValue& v = lookup(a, x.path);
    const auto* lit = std::get_if<Literal>(&v);
    return lit && literalEquals(*lit, x.value);
  }

  bool operator()(const CmpAtom& x) const {
    const auto n = numericValue(lookup(a, x.path));
    return n && applyCmp(x.op, *n, asNumber(x.bound));
  }

  bool operator()(const CmpParamsAtom& x) const {
    const auto l = numericValue(lookup(a, x.lhsPath));
    const auto r = numericValue(lookup(a, x.rhsPath));
    return l && r && applyCmp(x.op, *l, *r);
  }

  bool operator()(const LenAtom& x) const {
    const auto n = lengthOf(lookup(a, x.path));
    return n && applyCmp(x.op, static_cast<double>(*n), static_cast<double>(x.bound));
  }

  bool operator()(const InSetAtom& x) const {
    const AssignedValue& v = lookup(a, x.path);
    const auto* lit = std::get_if<Literal>(&v);
    if (!lit) return false;
    return std::any_of(x.values.begin(), x.values.end(),
                       [&](const Literal& m) { return literalEquals(*lit, m); });
  }

  bool operator()(const UnparsedAtom& x) const {
    auto it = a.unparsedFlags.find(x.text);
    if (it == a.unparsedFlags.end())
      throw MissingAssignmentError("no boolean assigned to unparsed fragment \"" +
                                   x.text + "\"");
    return it->second;
  }
};

}  // namespace

bool evaluateUnder(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::Leaf:
      return std::visit(AtomEval{a}, f.atom());
    case Formula::Kind::Not:
      return !evaluateUnder(f.child(), a);
    case Formula::Kind::And:
      for (const Formula& c : f.children())
        if (!evaluateUnder(c, a)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& c : f.children())
        if (evaluateUnder(c, a)) return true;
      return false;
  }
  return false;
}

void Domain::ensurePath(const std::string& path) {
  auto [it, inserted] = states_.try_emplace(path);
  if (inserted) it->second.push_back(Absent{});
}

void Domain::addValue(const std::string& path, const Literal& v) {
  ensurePath(path);
  auto& vals = states_[path];
  for (const auto& existing : vals) {
    if (const auto* lit = std::get_if<Literal>(&existing)) {
      if (*lit == v) return;
    }
  }
  vals.push_back(v);
}

void Domain::addFormula(const Formula& f) {
  f.eachAtom([&](const Atom& atom) {
    struct Visitor {
      Domain& d;
      void operator()(const PresentAtom& x) const {
        d.ensurePath(x.path);
        d.addValue(x.path, std::string("str"));
      }
      void operator()(const EqAtom& x) const {
        d.addValue(x.path, x.value);
        if (std::holds_alternative<bool>(x.value)) {
          d.addValue(x.path, !std::get<bool>(x.value));
        } else {
          d.addValue(x.path, std::string("str"));
        }
      }
      void operator()(const CmpAtom& x) const {
        if (const auto* i = std::get_if<std::int64_t>(&x.bound)) {
          d.addValue(x.path, *i - 1);
          d.addValue(x.path, *i);
          d.addValue(x.path, *i + 1);
        } else {
          const double b = asNumber(x.bound);
          d.addValue(x.path, b - 1.0);
          d.addValue(x.path, b);
          d.addValue(x.path, b + 1.0);
        }
      }
      void operator()(const CmpParamsAtom& x) const {
        d.addValue(x.lhsPath, std::int64_t{0});
        d.addValue(x.lhsPath, std::int64_t{1});
        d.addValue(x.rhsPath, std::int64_t{0});
        d.addValue(x.rhsPath, std::int64_t{1});
      }
      void operator()(const LenAtom& x) const {
        for (std::int64_t n : {x.bound - 1, x.bound, x.bound + 1}) {
          if (n < 0) continue;
          d.addValue(x.path, std::string(static_cast<size_t>(n), 'x'));
        }
      }
      void operator()(const InSetAtom& x) const {
        for (const Literal& v : x.values) d.addValue(x.path, v);
        d.addValue(x.path, std::string("str"));
      }
      void operator()(const UnparsedAtom&) const {}
    };
    std::visit(Visitor{*this}, atom);
  });
}

Domain Domain::forConstraints(std::span<const Constraint> cs) {
  Domain d;
  for (const Constraint& c : cs) d.addFormula(c.precondition);
  return d;
}

Domain Domain::forFormulas(std::span<const Formula> fs) {
  Domain d;
  for (const Formula& f : fs) d.addFormula(f);
  return d;
}

bool Domain::covers(const Formula& f) const {
  for (const auto& p : f.referencedPaths())
    if (!states_.contains(p)) return false;
  return true;
}

std::uint64_t Domain::assignmentCount() const {
  std::uint64_t n = 1;
  for (const auto& [path, vals] : states_) n *= vals.size();
  return n;
}

void Domain::eachAssignment(const std::function<bool(const Assignment&)>& fn) const {
  std::vector<const std::string*> paths;
  paths.reserve(states_.size());
  for (const auto& [path, vals] : states_) paths.push_back(&path);

  std::vector<size_t> idx(paths.size(), 0);
  Assignment a;
  while (true) {
    a.values.clear();
    for (size_t i = 0; i < paths.size(); ++i)
      a.values.emplace(*paths[i], states_.at(*paths[i])[idx[i]]);
    if (!fn(a)) return;

    size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < states_.at(*paths[i]).size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) return;
  }
}

bool equivalent(const Constraint& a, const Constraint& b, const Domain& d) {
  if (a.partial() || b.partial())
    throw PartialConstraintError(
        "constraints with unparsed fragments cannot be compared automatically");
  if (!d.covers(a.precondition) || !d.covers(b.precondition))
    throw DomainCoverageError("domain does not cover every referenced parameter");

  bool same = true;
  d.eachAssignment([&](const Assignment& point) {
    if (evaluateUnder(a.precondition, point) != evaluateUnder(b.precondition, point)) {
      same = false;
      return false;
    }
    return true;
  });
  return same;
}

}  // namespace cminer::logic
