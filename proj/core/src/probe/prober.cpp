#include "cminer/probe/prober.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

namespace cminer::probe {

using logic::Constraint;
using logic::Formula;
using logic::PresentAtom;

void runProbe(ObservationTable& table, HttpClient& client, const ProbeSession& session) {
  using Clock = std::chrono::steady_clock;
  const auto interval = session.rateLimit > 0
                            ? std::chrono::duration<double>(1.0 / session.rateLimit)
                            : std::chrono::duration<double>(0);
  auto nextSlot = Clock::now();

  for (TableRow& row : table.rows) {
    std::this_thread::sleep_until(nextSlot);
    nextSlot = Clock::now() + std::chrono::duration_cast<Clock::duration>(interval);

    const nlohmann::json body = buildRequest(session.baseRequest, table, row);
    const HttpResult res = client.post(session.endpointPath, body.dump(), session.headers);
    if (const auto* err = std::get_if<TransportError>(&res)) {
      row.result = RowResult::Error;
      row.errorText = err->message;
      continue;
    }
    const int status = std::get<HttpResponse>(res).status;
    row.result = (status >= 200 && status < 300) ? RowResult::Success : RowResult::Failure;
  }
}

namespace {

struct Template {
  std::string name;
  int priority;  // lower wins among table-equivalent fits
  Formula precondition;
};

Formula present(const std::string& p) { return Formula::leaf(PresentAtom{p}); }
Formula missing(const std::string& p) {
  return Formula::negation(Formula::leaf(PresentAtom{p}));
}

Formula valueEquals(const std::string& path, const logic::Literal& v) {
  if (logic::isNumeric(v))
    return Formula::leaf(logic::CmpAtom{path, logic::CmpOp::Eq, v});
  return Formula::leaf(logic::EqAtom{path, v});
}

std::vector<Template> pairTemplates(const ObservationTable& table) {
  const std::string& a = table.stateSets[0].path;
  const std::string& b = table.stateSets[1].path;

  std::vector<Template> out;
  auto addValueRequires = [&](const std::string& x, const std::string& y) {
    auto it = table.candidate.markedValues.find(x);
    if (it == table.candidate.markedValues.end()) return;
    for (const logic::Literal& v : it->second) {
      out.push_back({"value-requires(" + x + "==" + logic::printLiteral(v) + ", " + y + ")",
                     0,
                     Formula::conjunction({valueEquals(x, v), missing(y)})});
    }
  };
  addValueRequires(a, b);
  addValueRequires(b, a);

  out.push_back({"requires(" + a + ", " + b + ")", 1,
                 Formula::conjunction({present(a), missing(b)})});
  out.push_back({"requires(" + b + ", " + a + ")", 1,
                 Formula::conjunction({present(b), missing(a)})});
  out.push_back({"or-requires(" + a + ", " + b + ")", 2,
                 Formula::conjunction({missing(a), missing(b)})});
  out.push_back({"exactly-one(" + a + ", " + b + ")", 3,
                 Formula::disjunction(
                     {Formula::conjunction({missing(a), missing(b)}),
                      Formula::conjunction({present(a), present(b)})})});
  out.push_back({"all-or-none(" + a + ", " + b + ")", 4,
                 Formula::disjunction(
                     {Formula::conjunction({present(a), missing(b)}),
                      Formula::conjunction({present(b), missing(a)})})});
  return out;
}

}  // namespace

FitResult fitTemplates(const ObservationTable& table) {
  size_t errorRows = 0;
  for (const TableRow& row : table.rows) {
    if (row.result == RowResult::Pending)
      throw ProbeError("table has unprobed rows");
    if (row.result == RowResult::Error) ++errorRows;
  }
  if (table.rows.empty()) throw ProbeError("empty observation table");
  if (4 * errorRows > table.rows.size())
    throw ProbeError("more than 25% of probe rows failed at the transport level");

  FitResult result;

  std::vector<size_t> usable;
  std::set<size_t> observedFailures;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].result == RowResult::Error) continue;
    usable.push_back(i);
    if (table.rows[i].result == RowResult::Failure) observedFailures.insert(i);
  }

  if (observedFailures.empty()) return result;  // nothing observable

  if (observedFailures.size() == usable.size()) {
    result.diagnostics.push_back(
        "every combination failed for {" + table.stateSets[0].path + ", " +
        table.stateSets[1].path + "}: unobserved constraints suspected");
    return result;
  }

  const std::vector<Template> templates = pairTemplates(table);
  const Template* best = nullptr;
  for (const Template& t : templates) {
    std::set<size_t> predicted;
    for (size_t i : usable) {
      if (logic::evaluateUnder(t.precondition, table.rowAssignment(table.rows[i])))
        predicted.insert(i);
    }
    if (predicted == observedFailures && (!best || t.priority < best->priority)) best = &t;
  }

  if (!best) {
    result.diagnostics.push_back(
        "no template matches the observed failures for {" + table.stateSets[0].path +
        ", " + table.stateSets[1].path + "}: unobserved constraints suspected");
    return result;
  }

  Constraint c;
  c.precondition = normalize(best->precondition);
  c.origin = logic::Origin::Doc;
  c.klass = logic::ConstraintClass::Inter;
  c.sourceRef = "probe:" + table.stateSets[0].path + "+" + table.stateSets[1].path;
  result.constraints.push_back(std::move(c));
  return result;
}

std::int64_t estimateBudget(std::int64_t paramCount, std::int64_t topK,
                            std::int64_t valuesPerParam) {
  if (paramCount < 1) throw ProbeError("parameter count must be >= 1");
  const std::int64_t partners = std::min(topK, paramCount - 1);
  const std::int64_t states = valuesPerParam + 1;
  return partners * paramCount * states * states;
}

}  // namespace cminer::probe
