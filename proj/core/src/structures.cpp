#include "inqlab/structures.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace inqlab {

namespace {

void check_tuple_in_domain(const std::vector<int>& tuple, int domain_size,
                           const std::string& where) {
  for (int v : tuple)
    if (v < 0 || v >= domain_size)
      throw std::invalid_argument(where + ": element " + std::to_string(v) + " outside domain");
}

/// Enumerates arity-tuples over the domain in lexicographic order.
bool next_tuple(std::vector<int>& tuple, int domain_size) {
  for (size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < domain_size) return true;
    tuple[i] = 0;
  }
  return false;
}

std::vector<std::vector<int>> all_tuples(int arity, int domain_size) {
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(arity, 0);
  do {
    out.push_back(tuple);
  } while (next_tuple(tuple, domain_size));
  return out;
}

}  // namespace

uint64_t pow_u64(uint64_t base, uint64_t exp) {
  uint64_t result = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) throw std::overflow_error("pow_u64 overflow");
    result *= base;
  }
  return result;
}

void Structure::validate() const {
  if (domain_size <= 0) throw std::invalid_argument("domain must be non-empty");
  for (const auto& [name, table] : predicates) {
    auto it = sig.predicates.find(name);
    if (it == sig.predicates.end())
      throw std::invalid_argument("table for undeclared predicate " + name);
    for (const auto& tuple : table) {
      if (tuple.size() != static_cast<size_t>(it->second))
        throw std::invalid_argument("arity mismatch in table of " + name);
      check_tuple_in_domain(tuple, domain_size, name);
    }
  }
  for (const auto& [name, arity] : sig.predicates)
    (void)arity;  // absent table = empty relation, which is fine
  for (const auto& [name, arity] : sig.functions) {
    auto it = functions.find(name);
    if (it == functions.end()) throw std::invalid_argument("missing table for function " + name);
    const uint64_t expected = pow_u64(domain_size, arity);
    if (it->second.size() != expected)
      throw std::invalid_argument("function table for " + name + " is not total");
    for (const auto& [tuple, value] : it->second) {
      if (tuple.size() != static_cast<size_t>(arity))
        throw std::invalid_argument("arity mismatch in table of " + name);
      check_tuple_in_domain(tuple, domain_size, name);
      if (value < 0 || value >= domain_size)
        throw std::invalid_argument("function value outside domain in " + name);
    }
  }
  for (const auto& [name, table] : functions)
    if (!sig.functions.count(name))
      throw std::invalid_argument("table for undeclared function " + name);
}

Team Team::make(std::vector<std::string> vars, std::vector<std::vector<int>> rows) {
  for (const auto& row : rows)
    if (row.size() != vars.size())
      throw std::invalid_argument("team row width does not match variable domain");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Team t;
  t.vars = std::move(vars);
  t.rows = std::move(rows);
  return t;
}

Team Team::maximal(std::vector<std::string> vars, int domain_size) {
  const size_t k = vars.size();
  return make(std::move(vars), all_tuples(static_cast<int>(k), domain_size));
}

std::optional<size_t> Team::var_index(const std::string& v) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return i;
  return std::nullopt;
}

Assignment Team::assignment(size_t row) const {
  Assignment g;
  for (size_t i = 0; i < vars.size(); ++i) g[vars[i]] = rows[row][i];
  return g;
}

Team extend_const(const Team& x, const std::string& v, int value, int domain_size) {
  if (value < 0 || value >= domain_size)
    throw std::invalid_argument("extend_const: value outside domain");
  auto existing = x.var_index(v);
  std::vector<std::vector<int>> rows = x.rows;
  if (existing) {
    for (auto& row : rows) row[*existing] = value;
    return Team::make(x.vars, std::move(rows));
  }
  std::vector<std::string> vars = x.vars;
  vars.push_back(v);
  for (auto& row : rows) row.push_back(value);
  return Team::make(std::move(vars), std::move(rows));
}

Team extend_all(const Team& x, const std::string& v, const std::vector<int>& values,
                int domain_size) {
  for (int value : values)
    if (value < 0 || value >= domain_size)
      throw std::invalid_argument("extend_all: value outside domain");
  auto existing = x.var_index(v);
  std::vector<std::string> vars = x.vars;
  if (!existing) vars.push_back(v);
  std::vector<std::vector<int>> rows;
  rows.reserve(x.rows.size() * values.size());
  for (const auto& row : x.rows) {
    for (int value : values) {
      std::vector<int> extended = row;
      if (existing)
        extended[*existing] = value;
      else
        extended.push_back(value);
      rows.push_back(std::move(extended));
    }
  }
  return Team::make(std::move(vars), std::move(rows));
}

Team extend_full(const Team& x, const std::string& v, int domain_size) {
  std::vector<int> values(domain_size);
  for (int d = 0; d < domain_size; ++d) values[d] = d;
  return extend_all(x, v, values, domain_size);
}

Team restrict_team(const Team& x, const std::set<std::string>& keep) {
  std::vector<size_t> indices;
  std::vector<std::string> vars;
  for (const auto& v : keep) {
    auto idx = x.var_index(v);
    if (!idx) throw std::invalid_argument("restrict: variable " + v + " not in team domain");
  }
  for (size_t i = 0; i < x.vars.size(); ++i) {
    if (keep.count(x.vars[i])) {
      indices.push_back(i);
      vars.push_back(x.vars[i]);
    }
  }
  std::vector<std::vector<int>> rows;
  rows.reserve(x.rows.size());
  for (const auto& row : x.rows) {
    std::vector<int> narrowed;
    narrowed.reserve(indices.size());
    for (size_t i : indices) narrowed.push_back(row[i]);
    rows.push_back(std::move(narrowed));
  }
  return Team::make(std::move(vars), std::move(rows));
}

Relation team_relation(const Team& x, const std::vector<std::string>& tuple_vars) {
  std::vector<size_t> indices;
  indices.reserve(tuple_vars.size());
  for (const auto& v : tuple_vars) {
    auto idx = x.var_index(v);
    if (!idx) throw std::invalid_argument("team_relation: unknown variable " + v);
    indices.push_back(*idx);
  }
  Relation r;
  r.arity = static_cast<int>(tuple_vars.size());
  for (const auto& row : x.rows) {
    std::vector<int> tuple;
    tuple.reserve(indices.size());
    for (size_t i : indices) tuple.push_back(row[i]);
    r.tuples.insert(std::move(tuple));
  }
  return r;
}

Team relation_team(const Relation& r, const std::vector<std::string>& tuple_vars) {
  if (static_cast<size_t>(r.arity) != tuple_vars.size())
    throw std::invalid_argument("relation_team: arity does not match variable tuple");
  std::vector<std::vector<int>> rows(r.tuples.begin(), r.tuples.end());
  return Team::make(tuple_vars, std::move(rows));
}

uint64_t subteam_count(const Team& x, int cap) {
  if (static_cast<int>(x.size()) > cap)
    throw std::length_error("subteam enumeration over " + std::to_string(x.size()) +
                            " rows exceeds cap " + std::to_string(cap));
  return uint64_t(1) << x.size();
}

Team subteam(const Team& x, uint64_t mask) {
  std::vector<std::vector<int>> rows;
  rows.reserve(static_cast<size_t>(std::popcount(mask)));
  for (size_t i = 0; i < x.size(); ++i)
    if (mask & (uint64_t(1) << i)) rows.push_back(x.rows[i]);
  Team t;
  t.vars = x.vars;
  t.rows = std::move(rows);  // subsets of sorted unique rows stay sorted unique
  return t;
}

std::vector<Team> subteams(const Team& x, int cap) {
  const uint64_t n = subteam_count(x, cap);
  std::vector<Team> out;
  out.reserve(n);
  for (uint64_t mask = 0; mask < n; ++mask) out.push_back(subteam(x, mask));
  return out;
}

StructureEnumerator::StructureEnumerator(Signature sig, int domain_size, uint64_t cap)
    : sig_(std::move(sig)), domain_size_(domain_size) {
  if (domain_size <= 0) throw std::invalid_argument("domain must be non-empty");
  count_ = 1;
  auto push_radix = [&](uint64_t radix) {
    radices_.push_back(radix);
    if (radix != 0 && count_ > cap / radix)
      throw std::length_error("structure enumeration exceeds cap");
    count_ *= radix;
  };
  for (const auto& [name, arity] : sig_.predicates) {
    (void)name;
    push_radix(pow_u64(2, pow_u64(domain_size, arity)));
  }
  for (const auto& [name, arity] : sig_.functions) {
    (void)name;
    push_radix(pow_u64(domain_size, pow_u64(domain_size, arity)));
  }
}

Structure StructureEnumerator::at(uint64_t index) const {
  if (index >= count_) throw std::out_of_range("structure index");
  Structure s;
  s.domain_size = domain_size_;
  s.sig = sig_;
  size_t slot = 0;
  for (const auto& [name, arity] : sig_.predicates) {
    const uint64_t radix = radices_[slot++];
    uint64_t code = index % radix;
    index /= radix;
    auto tuples = all_tuples(arity, domain_size_);
    std::set<std::vector<int>> table;
    for (size_t i = 0; i < tuples.size(); ++i)
      if (code & (uint64_t(1) << i)) table.insert(tuples[i]);
    s.predicates[name] = std::move(table);
  }
  for (const auto& [name, arity] : sig_.functions) {
    const uint64_t radix = radices_[slot++];
    uint64_t code = index % radix;
    index /= radix;
    auto tuples = all_tuples(arity, domain_size_);
    std::map<std::vector<int>, int> table;
    for (const auto& tuple : tuples) {
      table[tuple] = static_cast<int>(code % domain_size_);
      code /= domain_size_;
    }
    s.functions[name] = std::move(table);
  }
  return s;
}

TeamEnumerator::TeamEnumerator(std::vector<std::string> vars, int domain_size, int row_cap)
    : vars_(std::move(vars)), domain_size_(domain_size) {
  const uint64_t rows = pow_u64(domain_size, vars_.size());
  if (rows > static_cast<uint64_t>(row_cap))
    throw std::length_error("team enumeration: assignment space exceeds row cap");
  row_count_ = static_cast<int>(rows);
  maximal_ = Team::maximal(vars_, domain_size_);
}

Team TeamEnumerator::at(uint64_t mask) const {
  if (mask >= count()) throw std::out_of_range("team index");
  return subteam(maximal_, mask);
}

}  // namespace inqlab
