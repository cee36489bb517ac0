#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jetgeom/scalar_field.hpp"
#include "jetgeom/temporal_metric.hpp"

namespace jetgeom {

struct Assignment {
  std::string key;
  std::string value;
  int line = 0;  // 0 for values that did not come from a file
};

using AssignmentMap = std::map<std::string, Assignment>;

/// Flat `key=value` text. `#` starts a comment; several assignments may share
/// a line when separated by whitespace. Duplicate keys are a ParseError.
AssignmentMap parse_assignments(std::string_view text);

/// True for `sigma.*` and `h.*` keys.
bool is_field_key(const std::string& key);

std::vector<double> parse_real_list(const Assignment& a);
double parse_real(const Assignment& a);

struct FieldConfig {
  ScalarField sigma;
  TemporalMetric h;
};

/// Builds σ and h₁₁ from field keys. Unknown keys are rejected; h defaults to
/// the constant metric 1 when `h.kind` is absent.
FieldConfig build_field_config(const AssignmentMap& kv);

FieldConfig parse_field_config(std::string_view text);

}  // namespace jetgeom
