#include "cminer/probe/observation_table.hpp"

namespace cminer::probe {

logic::Assignment ObservationTable::rowAssignment(const TableRow& row) const {
  logic::Assignment a;
  for (size_t i = 0; i < stateSets.size(); ++i) {
    const StateSet& s = stateSets[i];
    if (row.stateIndex[i] == 0) {
      a.values.emplace(s.path, logic::Absent{});
    } else {
      a.values.emplace(s.path, oas::assignedFromJson(s.values[row.stateIndex[i] - 1]));
    }
  }
  return a;
}

ObservationTable enumerateRows(const doc::Candidate& c, const oas::EndpointSpec& e,
                               const oas::Overrides& overrides) {
  if (c.paths.size() < 2)
    throw ProbeError("candidates must name at least two parameters");

  ObservationTable table;
  table.candidate = c;
  for (const std::string& path : c.paths) {
    const oas::ParameterSpec* spec = e.find(path);
    if (!spec) throw ProbeError("candidate path '" + path + "' not in endpoint spec");

    StateSet s;
    s.path = path;
    auto marked = c.markedValues.find(path);
    if (marked != c.markedValues.end() && !marked->second.empty()) {
      for (const logic::Literal& v : marked->second)
        s.values.push_back(oas::literalToJson(v));
    } else {
      s.values = {oas::defaultValue(*spec, overrides)};
    }
    table.stateSets.push_back(std::move(s));
  }

  size_t total = 1;
  for (const StateSet& s : table.stateSets) total *= s.stateCount();

  for (size_t n = 0; n < total; ++n) {
    TableRow row;
    row.stateIndex.resize(table.stateSets.size());
    size_t rem = n;
    for (size_t i = table.stateSets.size(); i-- > 0;) {
      row.stateIndex[i] = rem % table.stateSets[i].stateCount();
      rem /= table.stateSets[i].stateCount();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

nlohmann::json buildRequest(const nlohmann::json& base, const ObservationTable& table,
                            const TableRow& row) {
  nlohmann::json body = base;
  for (size_t i = 0; i < table.stateSets.size(); ++i) {
    const StateSet& s = table.stateSets[i];
    if (row.stateIndex[i] == 0) {
      oas::removeAtPath(body, s.path);
    } else {
      oas::setAtPath(body, s.path, s.values[row.stateIndex[i] - 1]);
    }
  }
  return body;
}

std::string tableCsv(const ObservationTable& table) {
  std::string out;
  for (size_t i = 0; i < table.stateSets.size(); ++i) {
    if (i) out += ',';
    out += table.stateSets[i].path;
  }
  out += ",result\n";
  for (const TableRow& row : table.rows) {
    for (size_t i = 0; i < table.stateSets.size(); ++i) {
      if (i) out += ',';
      if (row.stateIndex[i] == 0) {
        out += "absent";
      } else {
        const nlohmann::json& v = table.stateSets[i].values[row.stateIndex[i] - 1];
        std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
        if (cell.find_first_of(",\"\n") != std::string::npos) {
          std::string quoted = "\"";
          for (char ch : cell) {
            if (ch == '"') quoted += "\"\"";
            else quoted += ch;
          }
          quoted += '"';
          cell = std::move(quoted);
        }
        out += cell;
      }
    }
    out += ',';
    switch (row.result) {
      case RowResult::Pending: out += "pending"; break;
      case RowResult::Success: out += "success"; break;
      case RowResult::Failure: out += "failure"; break;
      case RowResult::Error: out += "error:" + row.errorText; break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace cminer::probe
