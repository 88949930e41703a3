#include "cminer/logic/formula.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace cminer::logic {

Formula Formula::leaf(Atom a) {
  Formula f;
  f.kind_ = Kind::Leaf;
  f.atom_ = std::move(a);
  return f;
}

Formula Formula::negation(Formula f) {
  Formula out;
  out.kind_ = Kind::Not;
  out.atom_.reset();
  out.children_.push_back(std::move(f));
  return out;
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) throw std::invalid_argument("conjunction of zero formulas");
  if (children.size() == 1) return std::move(children.front());
  Formula out;
  out.kind_ = Kind::And;
  out.atom_.reset();
  out.children_ = std::move(children);
  return out;
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) throw std::invalid_argument("disjunction of zero formulas");
  if (children.size() == 1) return std::move(children.front());
  Formula out;
  out.kind_ = Kind::Or;
  out.atom_.reset();
  out.children_ = std::move(children);
  return out;
}

void Formula::eachAtom(const std::function<void(const Atom&)>& fn) const {
  if (kind_ == Kind::Leaf) {
    fn(*atom_);
    return;
  }
  for (const Formula& c : children_) c.eachAtom(fn);
}

bool Formula::containsUnparsed() const {
  bool found = false;
  eachAtom([&](const Atom& a) { found = found || isUnparsed(a); });
  return found;
}

std::set<std::string> Formula::referencedPaths() const {
  std::set<std::string> out;
  eachAtom([&](const Atom& a) {
    for (auto& p : atomPaths(a)) out.insert(p);
  });
  return out;
}

Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Leaf:
      return f;
    case Formula::Kind::Not: {
      Formula inner = normalize(f.child());
      if (inner.kind() == Formula::Kind::Not) return inner.child();
      return Formula::negation(std::move(inner));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool isAnd = f.kind() == Formula::Kind::And;
      std::vector<Formula> flat;
      for (const Formula& c : f.children()) {
        Formula nc = normalize(c);
        if (nc.kind() == f.kind()) {
          for (Formula& g : std::move(nc).intoChildren()) flat.push_back(std::move(g));
        } else {
          flat.push_back(std::move(nc));
        }
      }
      std::sort(flat.begin(), flat.end(), [](const Formula& a, const Formula& b) {
        return functionalForm(a) < functionalForm(b);
      });
      flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
      if (flat.size() == 1) return std::move(flat.front());
      return isAnd ? Formula::conjunction(std::move(flat))
                   : Formula::disjunction(std::move(flat));
    }
  }
  assert(false && "unreachable");
  return f;
}

namespace {

// Parenthesize children whose connective binds looser than the parent.
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return 3;
    case Formula::Kind::Leaf: return 4;
  }
  return 4;
}

std::string printWithParent(const Formula& f, int parentPrec) {
  std::string out;
  switch (f.kind()) {
    case Formula::Kind::Leaf:
      out = printAtom(f.atom());
      break;
    case Formula::Kind::Not:
      out = "not " + printWithParent(f.child(), precedence(Formula::Kind::Not));
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const char* sep = f.kind() == Formula::Kind::And ? " and " : " or ";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        out += printWithParent(f.children()[i], precedence(f.kind()));
      }
      break;
    }
  }
  if (precedence(f.kind()) < parentPrec) return "(" + out + ")";
  return out;
}

}  // namespace

std::string printFormula(const Formula& f) { return printWithParent(f, 0); }

std::string functionalForm(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Leaf:
      return functionalAtom(f.atom());
    case Formula::Kind::Not:
      return "not(" + functionalForm(f.child()) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = f.kind() == Formula::Kind::And ? "and(" : "or(";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += ", ";
        out += functionalForm(f.children()[i]);
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace cminer::logic
