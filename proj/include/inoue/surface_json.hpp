#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "inoue/surfaces.hpp"

namespace inoue {

using ojson = nlohmann::ordered_json;

namespace detail {

// Exact rational from the decimal text of a JSON number ("0.25", "1e-3", "-2").
inline Rat rational_from_decimal(const std::string& text) {
  std::string mant = text;
  long exp10 = 0;
  auto epos = mant.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stol(mant.substr(epos + 1));
    mant = mant.substr(0, epos);
  }
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg || (!mant.empty() && mant[0] == '+')) mant = mant.substr(1);
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  // cpp_int reads a leading 0 as an octal prefix
  auto nz = mant.find_first_not_of('0');
  Int num(nz == std::string::npos ? std::string("0") : mant.substr(nz));
  Int den = 1;
  for (long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) (exp10 < 0 ? den : num) *= 10;
  Rat q(num, den);
  return neg ? Rat(-q) : q;
}

// Integer field; records an issue and returns nullopt on type errors.
inline std::optional<Int> int_field(const ojson& j, const char* key, std::vector<Issue>& issues) {
  const ojson& v = j.at(key);
  if (v.is_number_integer()) return v.is_number_unsigned() ? Int(v.get<std::uint64_t>()) : Int(v.get<std::int64_t>());
  issues.push_back({key, "must be an integer"});
  return std::nullopt;
}

inline std::optional<IntMat> matrix_field(const ojson& j, const char* key, std::size_t n, std::vector<Issue>& issues) {
  const ojson& v = j.at(key);
  std::string shape = "must be a " + std::to_string(n) + "x" + std::to_string(n) + " array of integers";
  if (!v.is_array() || v.size() != n) {
    issues.push_back({key, shape});
    return std::nullopt;
  }
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != n) {
      issues.push_back({key, shape});
      return std::nullopt;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const ojson& e = v[i][k];
      if (!e.is_number_integer()) {
        issues.push_back({key, shape});
        return std::nullopt;
      }
      m(i, k) = e.is_number_unsigned() ? Int(e.get<std::uint64_t>()) : Int(e.get<std::int64_t>());
    }
  }
  return m;
}

inline long long to_json_int(const Int& x) {
  if (!fits_int64(x)) throw PreconditionError("value " + x.str() + " does not fit a JSON integer");
  return x.convert_to<long long>();
}

inline ojson rational_to_json(const Rat& q) {
  if (denominator(q) == 1) return ojson(to_json_int(numerator(q)));
  return ojson(q.convert_to<double>());
}

inline ojson matrix_to_json(const IntMat& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json_int(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

/// Surface descriptor from parsed JSON. SchemaError lists every field problem;
/// the result is not validated (see parse_surface).
inline SurfaceDescriptor surface_from_json(const ojson& j) {
  std::vector<Issue> issues;
  if (!j.is_object()) throw SchemaError(std::vector<Issue>{{"(root)", "must be a JSON object"}});
  static const std::set<std::string> known{"kind", "M", "N", "p", "q", "r", "t", "sign", "conj"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) issues.push_back({key, "unknown field"});

  SurfaceDescriptor d;
  if (!j.contains("kind")) {
    issues.push_back({"kind", "required field missing"});
    throw SchemaError(std::move(issues));
  }
  const ojson& kind = j.at("kind");
  if (!kind.is_string() || (kind != "S0" && kind != "S+" && kind != "S-")) {
    issues.push_back({"kind", "must be one of \"S0\", \"S+\", \"S-\""});
    throw SchemaError(std::move(issues));
  }
  d.kind = kind_from_string(kind.get<std::string>());

  auto require = [&](const char* key) {
    if (j.contains(key)) return true;
    issues.push_back({key, "required for kind " + to_string(d.kind)});
    return false;
  };
  auto forbid = [&](const char* key) {
    if (j.contains(key)) issues.push_back({key, "not used by kind " + to_string(d.kind)});
  };

  if (d.kind == Kind::S0) {
    if (require("M"))
      if (auto m = detail::matrix_field(j, "M", 3, issues)) d.matrix = *m;
    for (const char* k : {"N", "p", "q", "r", "t"}) forbid(k);
    d.p = d.q = d.r = 0;
  } else {
    forbid("M");
    if (require("N"))
      if (auto m = detail::matrix_field(j, "N", 2, issues)) d.matrix = *m;
    for (const char* k : {"p", "q", "r"})
      if (require(k))
        if (auto v = detail::int_field(j, k, issues)) (k[0] == 'p' ? d.p : k[0] == 'q' ? d.q : d.r) = *v;
  }

  if (require("sign")) {
    const ojson& s = j.at("sign");
    if (s.is_number_integer() && (s.get<long long>() == 1 || s.get<long long>() == -1)) d.sign = s.get<int>();
    else issues.push_back({"sign", "must be 1 or -1"});
  }
  if (j.contains("t")) {
    const ojson& t = j.at("t");
    if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number()) {
      issues.push_back({"t", "must be a pair of numbers [re, im]"});
    } else {
      for (std::size_t i = 0; i < 2; ++i) d.t[i] = detail::rational_from_decimal(t[i].dump());
    }
  }
  if (j.contains("conj")) {
    if (j.at("conj").is_boolean()) d.conj = j.at("conj").get<bool>();
    else issues.push_back({"conj", "must be a boolean"});
  }
  if (!issues.empty()) throw SchemaError(std::move(issues));
  return d;
}

/// Parse and validate. MalformedInput, SchemaError and ValidationError are distinct.
inline SurfaceDescriptor parse_surface(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("malformed JSON: ") + e.what());
  }
  SurfaceDescriptor d = surface_from_json(j);
  validate(d);
  return d;
}

inline SurfaceDescriptor parse_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_surface(ss.str());
}

/// JSON in the surface schema. Rescalings (a_scale, b_scale) are not representable and
/// must be 1. Non-integer t is written as a double.
inline ojson surface_to_json(const SurfaceDescriptor& d) {
  if (d.a_scale != 1 || d.b_scale != 1) throw PreconditionError("surface_to_json: rescaled eigenvectors have no JSON form");
  ojson j;
  j["kind"] = to_string(d.kind);
  if (d.kind == Kind::S0) {
    j["M"] = detail::matrix_to_json(d.matrix);
  } else {
    j["N"] = detail::matrix_to_json(d.matrix);
    j["p"] = detail::to_json_int(d.p);
    j["q"] = detail::to_json_int(d.q);
    j["r"] = detail::to_json_int(d.r);
    if (d.t[0] != 0 || d.t[1] != 0) j["t"] = {detail::rational_to_json(d.t[0]), detail::rational_to_json(d.t[1])};
  }
  j["sign"] = d.sign;
  if (d.kind == Kind::S0) j["conj"] = d.conj;
  return j;
}

}  // namespace inoue
