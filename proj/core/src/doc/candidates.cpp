#include "cminer/doc/candidates.hpp"

#include <algorithm>
#include <cctype>

namespace cminer::doc {

CooccurrenceMatrix::CooccurrenceMatrix(std::vector<std::string> params)
    : params_(std::move(params)), cells_(params_.size() * params_.size(), 0) {}

std::vector<long> CooccurrenceMatrix::totals() const {
  std::vector<long> out(params_.size(), 0);
  for (size_t i = 0; i < params_.size(); ++i)
    for (size_t j = 0; j < params_.size(); ++j)
      if (i != j) out[i] += symmetrized(i, j);
  return out;
}

namespace {

bool wordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string lastSegment(const std::string& path) {
  const size_t dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(dot + 1);
}

}  // namespace

int countMentions(const std::string& text, const std::string& word) {
  if (word.empty()) return 0;
  int count = 0;
  size_t pos = 0;
  while ((pos = text.find(word, pos)) != std::string::npos) {
    const bool leftOk = pos == 0 || !wordChar(text[pos - 1]);
    const size_t end = pos + word.size();
    const bool rightOk = end >= text.size() || !wordChar(text[end]);
    if (leftOk && rightOk) ++count;
    pos = end;
  }
  return count;
}

CooccurrenceMatrix buildCooccurrence(const oas::EndpointSpec& e) {
  std::vector<std::string> params;
  params.reserve(e.flatIndex().size());
  for (const auto& [path, spec] : e.flatIndex()) params.push_back(path);

  CooccurrenceMatrix m(params);
  for (size_t i = 0; i < params.size(); ++i) {
    const std::string& desc = e.find(params[i])->description;
    if (desc.empty()) continue;
    for (size_t j = 0; j < params.size(); ++j) {
      if (i == j) continue;
      const int n = countMentions(desc, lastSegment(params[j]));
      if (n > 0) m.add(i, j, n);
    }
  }
  return m;
}

MarkedValues markValues(const oas::EndpointSpec& e) {
  MarkedValues out;
  for (const auto& [describerPath, describer] : e.flatIndex()) {
    if (describer->description.empty()) continue;
    for (const auto& [ownerPath, owner] : e.flatIndex()) {
      for (const logic::Literal& v : owner->enumValues) {
        const auto* s = std::get_if<std::string>(&v);
        const std::string text = s ? *s : logic::printLiteral(v);
        if (countMentions(describer->description, text) > 0)
          out[describerPath].insert({ownerPath, v});
      }
    }
  }
  return out;
}

std::vector<Candidate> candidates(const oas::EndpointSpec& e, double frequencyFactor) {
  const CooccurrenceMatrix m = buildCooccurrence(e);
  const auto& params = m.params();
  const std::vector<long> totals = m.totals();

  // Mean over parameters that co-occur at all; a threshold over the full
  // parameter list would collapse to ~0 on large endpoints.
  long sum = 0;
  int nonzero = 0;
  for (long t : totals) {
    if (t > 0) {
      sum += t;
      ++nonzero;
    }
  }
  const double mean = nonzero == 0 ? 0.0 : static_cast<double>(sum) / nonzero;
  const double cutoff = frequencyFactor * mean;

  std::vector<bool> dropped(params.size(), false);
  for (size_t i = 0; i < params.size(); ++i)
    if (static_cast<double>(totals[i]) > cutoff) dropped[i] = true;

  const MarkedValues marked = markValues(e);

  std::vector<Candidate> out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (dropped[i]) continue;
    for (size_t j = i + 1; j < params.size(); ++j) {
      if (dropped[j] || m.symmetrized(i, j) == 0) continue;
      Candidate c;
      c.paths = {params[i], params[j]};
      std::sort(c.paths.begin(), c.paths.end());
      for (const std::string& describer : c.paths) {
        auto it = marked.find(describer);
        if (it == marked.end()) continue;
        for (const auto& [ownerPath, literal] : it->second) {
          if (ownerPath != c.paths[0] && ownerPath != c.paths[1]) continue;
          auto& vals = c.markedValues[ownerPath];
          if (std::find(vals.begin(), vals.end(), literal) == vals.end())
            vals.push_back(literal);
        }
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

nlohmann::json candidatesToJson(const std::vector<Candidate>& cs) {
  nlohmann::json out = nlohmann::json::array();
  for (const Candidate& c : cs) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [path, literals] : c.markedValues) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& v : literals) arr.push_back(oas::literalToJson(v));
      values[path] = std::move(arr);
    }
    out.push_back({{"params", c.paths}, {"values", std::move(values)}});
  }
  return out;
}

std::vector<Candidate> candidatesFromJson(const nlohmann::json& doc) {
  std::vector<Candidate> out;
  for (const auto& item : doc) {
    Candidate c;
    for (const auto& p : item.at("params")) c.paths.push_back(p.get<std::string>());
    if (item.contains("values")) {
      for (auto it = item["values"].begin(); it != item["values"].end(); ++it) {
        std::vector<logic::Literal> vals;
        for (const auto& v : it.value()) vals.push_back(oas::jsonToLiteral(v));
        c.markedValues[it.key()] = std::move(vals);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace cminer::doc
