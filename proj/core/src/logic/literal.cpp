#include "cminer/logic/literal.hpp"

#include <cmath>
#include <sstream>

namespace cminer::logic {

bool isNumeric(const Literal& v) {
  return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

double asNumber(const Literal& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return 0.0;
}

bool literalEquals(const Literal& a, const Literal& b) {
  if (isNumeric(a) && isNumeric(b)) return asNumber(a) == asNumber(b);
  return a == b;
}

bool literalLess(const Literal& a, const Literal& b) {
  if (isNumeric(a) && isNumeric(b)) {
    const double x = asNumber(a), y = asNumber(b);
    if (x != y) return x < y;
    return a.index() < b.index();
  }
  if (a.index() != b.index()) return a.index() < b.index();
  return a < b;
}

std::string quoteString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string printLiteral(const Literal& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      if (d == std::floor(d) && std::isfinite(d) && std::abs(d) < 1e15) {
        return std::to_string(static_cast<std::int64_t>(d)) + ".0";
      }
      std::ostringstream os;
      os.precision(17);
      os << d;
      return os.str();
    }
    std::string operator()(const std::string& s) const { return quoteString(s); }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace cminer::logic
