#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "inqlab/syntax.hpp"

namespace inqlab {

/// Total assignment of domain elements to variables.
using Assignment = std::map<std::string, int>;

/// Finite first-order model. Domain elements are the dense integers
/// 0..domain_size-1; constants of the signature map into them through
/// 0-ary function tables.
struct Structure {
  int domain_size = 1;
  Signature sig;
  std::map<std::string, std::set<std::vector<int>>> predicates;
  std::map<std::string, std::map<std::vector<int>, int>> functions;

  /// Throws std::invalid_argument unless every table matches the signature,
  /// lies within the domain, and every function table is total.
  void validate() const;

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.domain_size == b.domain_size && a.predicates == b.predicates &&
           a.functions == b.functions;
  }
};

struct Relation {
  int arity = 0;
  std::set<std::vector<int>> tuples;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// A set of assignments over a shared, ordered variable domain. Rows are
/// kept lexicographically sorted and duplicate-free, so row indices are
/// stable and a sub-team is a bit mask over them. The empty team keeps its
/// variable domain.
struct Team {
  std::vector<std::string> vars;
  std::vector<std::vector<int>> rows;

  static Team make(std::vector<std::string> vars, std::vector<std::vector<int>> rows);
  static Team empty(std::vector<std::string> vars) { return make(std::move(vars), {}); }
  /// The team of the single empty assignment (the unit for sentences).
  static Team unit() { return make({}, {{}}); }
  /// Every assignment of domain values to `vars`.
  static Team maximal(std::vector<std::string> vars, int domain_size);

  size_t size() const { return rows.size(); }
  std::optional<size_t> var_index(const std::string& v) const;
  Assignment assignment(size_t row) const;

  friend bool operator==(const Team&, const Team&) = default;
};

Team extend_const(const Team& x, const std::string& v, int value, int domain_size);
Team extend_all(const Team& x, const std::string& v, const std::vector<int>& values,
                int domain_size);
/// extend_all over the full domain (the [x] quantifier's team).
Team extend_full(const Team& x, const std::string& v, int domain_size);
Team restrict_team(const Team& x, const std::set<std::string>& keep);

Relation team_relation(const Team& x, const std::vector<std::string>& tuple_vars);
Team relation_team(const Relation& r, const std::vector<std::string>& tuple_vars);

/// Sub-team enumeration as bit masks over row indices, mask order 0,1,2,...
uint64_t subteam_count(const Team& x, int cap = 20);
Team subteam(const Team& x, uint64_t mask);
std::vector<Team> subteams(const Team& x, int cap = 20);

/// Deterministic exhaustive enumeration of structures over a signature with
/// a fixed domain size. Index-addressable so workers can partition ranges.
class StructureEnumerator {
 public:
  StructureEnumerator(Signature sig, int domain_size, uint64_t cap = uint64_t(1) << 32);
  uint64_t count() const { return count_; }
  Structure at(uint64_t index) const;

 private:
  Signature sig_;
  int domain_size_;
  uint64_t count_;
  // Radix per symbol, in signature iteration order: predicates then functions.
  std::vector<uint64_t> radices_;
};

/// All teams over a variable tuple: index i is the team whose rows are the
/// bits of i over the lexicographically ordered assignment space.
class TeamEnumerator {
 public:
  TeamEnumerator(std::vector<std::string> vars, int domain_size, int row_cap = 26);
  uint64_t count() const { return uint64_t(1) << row_count_; }
  uint64_t row_count() const { return row_count_; }
  Team at(uint64_t mask) const;

 private:
  std::vector<std::string> vars_;
  int domain_size_;
  int row_count_;
  Team maximal_;
};

uint64_t pow_u64(uint64_t base, uint64_t exp);

}  // namespace inqlab
