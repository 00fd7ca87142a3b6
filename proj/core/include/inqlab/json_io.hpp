#pragma once

#include <string>

#include "inqlab/inqbq.hpp"
#include "inqlab/metatheory.hpp"
#include "inqlab/structures.hpp"

namespace inqlab {

/// Model files: {"domain": n, "predicates": {"P": [[...], ...]},
/// "functions": {"f": {"(0,1)": v, ...}}}. Constants are 0-ary functions
/// keyed by "()". An optional "signature" object ({"predicates": {...},
/// "functions": {...}}) pins arities that empty tables cannot reveal.
std::string structure_to_json(const Structure& s, int indent = 2);
Structure structure_from_json(const std::string& text);

/// Team files: {"vars": [...], "rows": [[...], ...]}.
std::string team_to_json(const Team& t, int indent = 2);
Team team_from_json(const std::string& text);

/// Info-model files: {"worlds": k, "domain": n,
/// "interpretation": [structure objects]}.
std::string info_model_to_json(const InfoModel& m, int indent = 2);
InfoModel info_model_from_json(const std::string& text);

std::string suite_report_to_json(const SuiteReport& report, int indent = 2);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace inqlab
