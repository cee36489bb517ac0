#include "jetgeom/field_config.hpp"

#include <cerrno>
#include <cstdlib>
#include <sstream>

namespace jetgeom {

namespace {

std::string where(const Assignment& a) {
  return a.line > 0 ? "line " + std::to_string(a.line) + ", key '" + a.key + "'"
                    : "key '" + a.key + "'";
}

const Assignment& require(const AssignmentMap& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("missing required key '" + key + "'");
  return it->second;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_real(const std::string& s, const Assignment& a) {
  if (s.empty()) throw ParseError(where(a) + ": empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError(where(a) + ": '" + s + "' is not a finite real");
  }
  return v;
}

int to_exponent(const std::string& s, const Assignment& a) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(where(a) + ": exponent '" + s + "' is not a non-negative integer");
  }
  return std::stoi(s);
}

void expect_count(const std::vector<double>& v, std::size_t n, const Assignment& a) {
  if (v.size() != n) {
    throw ParseError(where(a) + ": expected " + std::to_string(n) + " values, got " +
                     std::to_string(v.size()));
  }
}

ScalarField build_sigma(const AssignmentMap& kv) {
  const Assignment& kind = require(kv, "sigma.kind");
  const bool has_coeffs = kv.count("sigma.coeffs") != 0;
  const bool has_terms = kv.count("sigma.terms") != 0;
  try {
    if (kind.value == "polynomial") {
      if (has_coeffs) throw ParseError(where(kv.at("sigma.coeffs")) + ": polynomial uses sigma.terms");
      const Assignment& terms = require(kv, "sigma.terms");
      std::vector<Monomial> monomials;
      for (const auto& entry : split(terms.value, ',')) {
        const auto parts = split(entry, ':');
        if (parts.size() != 2) throw ParseError(where(terms) + ": term '" + entry + "' is not e1.e2.e3.e4:coeff");
        const auto exps = split(parts[0], '.');
        if (exps.size() != 4) throw ParseError(where(terms) + ": term '" + entry + "' needs four exponents");
        Monomial m;
        for (const auto& e : exps) m.exponents.push_back(to_exponent(e, terms));
        m.coeff = to_real(parts[1], terms);
        monomials.push_back(std::move(m));
      }
      return ScalarField::polynomial(std::move(monomials), 4);
    }
    if (has_terms) throw ParseError(where(kv.at("sigma.terms")) + ": only polynomial fields take terms");
    const Assignment& coeffs = require(kv, "sigma.coeffs");
    const std::vector<double> c = parse_real_list(coeffs);
    if (kind.value == "constant") {
      expect_count(c, 1, coeffs);
      return ScalarField::constant(c[0], 4);
    }
    if (kind.value == "linear") {
      expect_count(c, 4, coeffs);
      return ScalarField::linear(Eigen::Map<const Eigen::Vector4d>(c.data()));
    }
    if (kind.value == "quadratic") {
      if (c.size() != 16 && c.size() != 20) {
        throw ParseError(where(coeffs) + ": quadratic takes 16 (Q) or 20 (Q then a) values");
      }
      Eigen::Matrix4d q = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(c.data());
      Eigen::Vector4d a = Eigen::Vector4d::Zero();
      if (c.size() == 20) a = Eigen::Map<const Eigen::Vector4d>(c.data() + 16);
      return ScalarField::quadratic(q, a);
    }
  } catch (const MalformedField& e) {
    throw ParseError(where(kind) + ": " + e.what());
  }
  throw ParseError(where(kind) + ": unknown sigma kind '" + kind.value + "'");
}

TemporalMetric build_h(const AssignmentMap& kv) {
  auto it = kv.find("h.kind");
  if (it == kv.end()) {
    if (kv.count("h.params")) throw ParseError("h.params given without h.kind");
    return TemporalMetric::constant(1.0);
  }
  const Assignment& kind = it->second;
  const Assignment& params = require(kv, "h.params");
  const std::vector<double> p = parse_real_list(params);
  expect_count(p, 1, params);
  try {
    if (kind.value == "constant") return TemporalMetric::constant(p[0]);
    if (kind.value == "power") return TemporalMetric::power(p[0]);
    if (kind.value == "exponential") return TemporalMetric::exponential(p[0]);
  } catch (const DomainError& e) {
    throw ParseError(where(params) + ": " + e.what());
  }
  throw ParseError(where(kind) + ": unknown h kind '" + kind.value + "'");
}

}  // namespace

AssignmentMap parse_assignments(std::string_view text) {
  AssignmentMap out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParseError("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'");
      }
      Assignment a{tok.substr(0, eq), tok.substr(eq + 1), lineno};
      if (out.count(a.key)) throw ParseError(where(a) + ": duplicate key");
      out.emplace(a.key, a);
    }
  }
  return out;
}

bool is_field_key(const std::string& key) {
  return key.rfind("sigma.", 0) == 0 || key.rfind("h.", 0) == 0;
}

std::vector<double> parse_real_list(const Assignment& a) {
  std::vector<double> out;
  for (const auto& part : split(a.value, ',')) out.push_back(to_real(part, a));
  return out;
}

double parse_real(const Assignment& a) { return to_real(a.value, a); }

FieldConfig build_field_config(const AssignmentMap& kv) {
  static const char* const kKnown[] = {"sigma.kind", "sigma.coeffs", "sigma.terms", "h.kind",
                                       "h.params"};
  for (const auto& [key, a] : kv) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw ParseError(where(a) + ": unknown key");
  }
  return FieldConfig{build_sigma(kv), build_h(kv)};
}

FieldConfig parse_field_config(std::string_view text) {
  return build_field_config(parse_assignments(text));
}

}  // namespace jetgeom
