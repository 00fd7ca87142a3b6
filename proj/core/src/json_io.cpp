#include "inqlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "inqlab/parser.hpp"

namespace inqlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string tuple_key(const std::vector<int>& tuple) {
  std::string key = "(";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(tuple[i]);
  }
  return key + ")";
}

std::vector<int> parse_tuple_key(const std::string& key) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')')
    throw std::invalid_argument("function table key must look like \"(0,1)\": " + key);
  std::vector<int> tuple;
  std::string inner = key.substr(1, key.size() - 2);
  std::istringstream in(inner);
  std::string field;
  while (std::getline(in, field, ',')) tuple.push_back(std::stoi(field));
  return tuple;
}

ordered_json structure_json(const Structure& s) {
  ordered_json j;
  j["domain"] = s.domain_size;
  ordered_json preds = ordered_json::object();
  for (const auto& [name, table] : s.predicates) {
    ordered_json rows = ordered_json::array();
    for (const auto& tuple : table) rows.push_back(tuple);
    preds[name] = std::move(rows);
  }
  j["predicates"] = std::move(preds);
  ordered_json fns = ordered_json::object();
  for (const auto& [name, table] : s.functions) {
    ordered_json entries = ordered_json::object();
    for (const auto& [tuple, value] : table) entries[tuple_key(tuple)] = value;
    fns[name] = std::move(entries);
  }
  j["functions"] = std::move(fns);
  ordered_json sig;
  sig["predicates"] = s.sig.predicates;
  sig["functions"] = s.sig.functions;
  j["signature"] = std::move(sig);
  return j;
}

Structure structure_from(const ordered_json& j) {
  Structure s;
  s.domain_size = j.at("domain").get<int>();
  if (j.contains("signature")) {
    const auto& sig = j.at("signature");
    for (const auto& [name, arity] : sig.at("predicates").items())
      s.sig.predicate(name, arity.get<int>());
    for (const auto& [name, arity] : sig.at("functions").items())
      s.sig.function(name, arity.get<int>());
  }
  if (j.contains("predicates")) {
    for (const auto& [name, rows] : j.at("predicates").items()) {
      auto& table = s.predicates[name];
      for (const auto& row : rows) table.insert(row.get<std::vector<int>>());
      if (!s.sig.has_predicate(name)) {
        if (table.empty())
          throw std::invalid_argument("empty table for '" + name +
                                      "' needs a \"signature\" entry to fix its arity");
        s.sig.predicate(name, static_cast<int>(table.begin()->size()));
      }
    }
  }
  if (j.contains("functions")) {
    for (const auto& [name, entries] : j.at("functions").items()) {
      auto& table = s.functions[name];
      for (const auto& [key, value] : entries.items())
        table[parse_tuple_key(key)] = value.get<int>();
      if (!s.sig.has_function(name)) {
        if (table.empty())
          throw std::invalid_argument("empty table for '" + name +
                                      "' needs a \"signature\" entry to fix its arity");
        s.sig.function(name, static_cast<int>(table.begin()->first.size()));
      }
    }
  }
  s.validate();
  return s;
}

}  // namespace

std::string structure_to_json(const Structure& s, int indent) {
  return structure_json(s).dump(indent);
}

Structure structure_from_json(const std::string& text) {
  return structure_from(ordered_json::parse(text));
}

std::string team_to_json(const Team& t, int indent) {
  ordered_json j;
  j["vars"] = t.vars;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  return j.dump(indent);
}

Team team_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  std::vector<std::vector<int>> rows;
  for (const auto& row : j.at("rows")) rows.push_back(row.get<std::vector<int>>());
  return Team::make(std::move(vars), std::move(rows));
}

std::string info_model_to_json(const InfoModel& m, int indent) {
  ordered_json j;
  j["worlds"] = m.world_count();
  j["domain"] = m.domain_size;
  ordered_json worlds = ordered_json::array();
  for (const Structure& w : m.worlds) worlds.push_back(structure_json(w));
  j["interpretation"] = std::move(worlds);
  return j.dump(indent);
}

InfoModel info_model_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  InfoModel m;
  m.domain_size = j.at("domain").get<int>();
  const int worlds = j.at("worlds").get<int>();
  for (const auto& world : j.at("interpretation")) {
    Structure s = structure_from(world);
    if (s.domain_size != m.domain_size)
      throw std::invalid_argument("per-world domain differs from the model domain");
    m.worlds.push_back(std::move(s));
  }
  if (m.world_count() != worlds)
    throw std::invalid_argument("\"worlds\" does not match the interpretation length");
  m.validate();
  return m;
}

std::string suite_report_to_json(const SuiteReport& report, int indent) {
  ordered_json j;
  j["passed"] = report.passed();
  ordered_json props = ordered_json::array();
  for (const auto& p : report.properties) {
    ordered_json pj;
    pj["property"] = p.property;
    pj["checked"] = p.checked;
    pj["violated"] = p.violated;
    ordered_json ces = ordered_json::array();
    for (const auto& c : p.counterexamples) {
      ordered_json cj;
      cj["model"] = structure_json(c.model);
      cj["team"] = ordered_json::parse(team_to_json(c.team, -1));
      cj["formula"] = render(c.formula);
      cj["detail"] = c.detail;
      ces.push_back(std::move(cj));
    }
    pj["counterexamples"] = std::move(ces);
    props.push_back(std::move(pj));
  }
  j["properties"] = std::move(props);
  return j.dump(indent);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace inqlab
