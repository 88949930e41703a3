#include "cminer/scoring/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cminer::scoring {

using logic::Constraint;

std::vector<Constraint> loadGroundTruth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ground-truth file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<Constraint> out =
      logic::parseDsl(buf.str(), nullptr, logic::Origin::GroundTruth, path);
  for (const Constraint& c : out) {
    if (c.partial())
      throw std::runtime_error("ground truth must not contain unparsed atoms (" +
                               c.sourceRef + ")");
  }
  return out;
}

EvaluationReport matchConstraints(std::span<const Constraint> identified,
                                  std::span<const Constraint> truth,
                                  const logic::Domain& domain) {
  EvaluationReport report;

  // Partial-match splitting on both sides.
  std::vector<Constraint> truthParts;
  for (const Constraint& t : truth) {
    for (Constraint& part : logic::decompose(t.normalized()))
      truthParts.push_back(std::move(part));
  }
  std::vector<Constraint> identifiedParts;
  for (const Constraint& c : identified) {
    if (c.partial()) {
      report.manualReview.push_back(c);
      continue;
    }
    for (Constraint& part : logic::decompose(c.normalized()))
      identifiedParts.push_back(std::move(part));
  }

  std::sort(identifiedParts.begin(), identifiedParts.end(),
            [](const Constraint& a, const Constraint& b) {
              return functionalForm(a.precondition) < functionalForm(b.precondition);
            });

  for (const Constraint& t : truthParts) {
    if (!domain.covers(t.precondition))
      throw logic::DomainCoverageError("domain does not cover ground truth constraint " +
                                       t.sourceRef);
  }

  std::vector<bool> used(identifiedParts.size(), false);
  for (const Constraint& t : truthParts) {
    bool matched = false;
    for (size_t i = 0; i < identifiedParts.size(); ++i) {
      if (used[i]) continue;
      if (logic::equivalent(identifiedParts[i], t, domain)) {
        used[i] = true;
        report.matches.push_back({identifiedParts[i], t});
        matched = true;
        break;
      }
    }
    if (!matched) report.missed.push_back(t);
  }
  for (size_t i = 0; i < identifiedParts.size(); ++i)
    if (!used[i]) report.spurious.push_back(identifiedParts[i]);

  auto classOf = [](const Constraint& c) { return logic::classify(c); };
  auto bump = [&](ClassCounts& counts, logic::ConstraintClass wanted) {
    for (const MatchedPair& m : report.matches)
      if (classOf(m.truth) == wanted) ++counts.matched;
    for (const Constraint& c : report.missed)
      if (classOf(c) == wanted) ++counts.missed;
    for (const Constraint& c : report.spurious)
      if (classOf(c) == wanted) ++counts.spurious;
    counts.truthTotal = counts.matched + counts.missed;
    counts.identifiedTotal = counts.matched + counts.spurious;
  };
  bump(report.inter, logic::ConstraintClass::Inter);
  bump(report.single, logic::ConstraintClass::Single);
  report.combined.matched = static_cast<int>(report.matches.size());
  report.combined.missed = static_cast<int>(report.missed.size());
  report.combined.spurious = static_cast<int>(report.spurious.size());
  report.combined.truthTotal = report.combined.matched + report.combined.missed;
  report.combined.identifiedTotal = report.combined.matched + report.combined.spurious;
  return report;
}

double ratioOrOne(int numerator, int denominator) {
  if (denominator == 0) return 1.0;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

Metrics metrics(const EvaluationReport& report) {
  Metrics m;
  m.interRecall = ratioOrOne(report.inter.matched, report.inter.truthTotal);
  m.interPrecision = ratioOrOne(report.inter.matched, report.inter.identifiedTotal);
  m.singleRecall = ratioOrOne(report.single.matched, report.single.truthTotal);
  m.singlePrecision = ratioOrOne(report.single.matched, report.single.identifiedTotal);
  m.combinedRecall = ratioOrOne(report.combined.matched, report.combined.truthTotal);
  m.combinedPrecision = ratioOrOne(report.combined.matched, report.combined.identifiedTotal);
  return m;
}

namespace {

nlohmann::json constraintJson(const Constraint& c) {
  nlohmann::json out;
  out["constraint"] = logic::printConstraint(c);
  out["origin"] = std::string(logic::originText(c.origin));
  if (!c.sourceRef.empty()) out["sourceRef"] = c.sourceRef;
  if (!c.category.empty()) out["category"] = c.category;
  return out;
}

nlohmann::json countsJson(const ClassCounts& c, double recall, double precision) {
  return {{"matched", c.matched},     {"missed", c.missed},
          {"spurious", c.spurious},   {"truthTotal", c.truthTotal},
          {"identifiedTotal", c.identifiedTotal},
          {"recall", recall},         {"precision", precision}};
}

}  // namespace

nlohmann::json reportToJson(const EvaluationReport& report) {
  const Metrics m = metrics(report);
  nlohmann::json out;
  out["classes"] = {
      {"inter", countsJson(report.inter, m.interRecall, m.interPrecision)},
      {"single", countsJson(report.single, m.singleRecall, m.singlePrecision)},
      {"combined", countsJson(report.combined, m.combinedRecall, m.combinedPrecision)},
  };
  out["matches"] = nlohmann::json::array();
  for (const MatchedPair& p : report.matches)
    out["matches"].push_back(
        {{"identified", logic::printConstraint(p.identified)},
         {"truth", logic::printConstraint(p.truth)}});
  out["missed"] = nlohmann::json::array();
  for (const Constraint& c : report.missed) out["missed"].push_back(constraintJson(c));
  out["spurious"] = nlohmann::json::array();
  for (const Constraint& c : report.spurious) out["spurious"].push_back(constraintJson(c));
  out["manualReview"] = nlohmann::json::array();
  for (const Constraint& c : report.manualReview)
    out["manualReview"].push_back(constraintJson(c));
  return out;
}

std::string reportTable(const std::string& endpoint, const EvaluationReport& report) {
  std::ostringstream os;
  os << "Endpoint | Class | Identified | Total | FP\n";
  os << "---------+-------+------------+-------+---\n";
  auto row = [&](const char* cls, const ClassCounts& c) {
    os << endpoint << " | " << cls << " | " << c.matched << " | " << c.truthTotal << " | "
       << c.spurious << "\n";
  };
  row("inter", report.inter);
  row("single", report.single);
  row("combined", report.combined);
  if (!report.manualReview.empty())
    os << "(" << report.manualReview.size() << " constraint(s) held for manual review)\n";
  return os.str();
}

}  // namespace cminer::scoring
