/*
 * Copyright 2026 The ccsynth Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ccsynth/profile_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ccsynth/error.hpp"
#include "json.hpp"

namespace ccsynth {
namespace {

using nlohmann::json;

class Writer {
 public:
  std::string Take() { return std::move(out_); }

  void Raw(std::string_view s) { out_.append(s); }
  void Newline(int depth) {
    out_.push_back('\n');
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
  }
  void Key(std::string_view key) {
    String(key);
    out_.append(": ");
  }
  void String(std::string_view s) { out_.append(json(s).dump()); }
  void Real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_.append(buf);
    // Keep every real lexically a float so that -0.0 survives parsing.
    if (std::string_view(buf).find_first_of(".e") == std::string_view::npos) {
      out_.append(".0");
    }
  }
  void Integer(long long v) { out_.append(std::to_string(v)); }

  void RealArray(const std::vector<double>& values) {
    out_.push_back('[');
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out_.append(", ");
      Real(values[i]);
    }
    out_.push_back(']');
  }

 private:
  std::string out_;
};

void WriteSimple(Writer& w, const SimpleConstraint& simple, int depth) {
  w.Raw("{");
  w.Newline(depth + 1);
  w.Key("conjuncts");
  w.Raw("[");
  for (std::size_t k = 0; k < simple.conjuncts.size(); ++k) {
    const auto& c = simple.conjuncts[k];
    if (k > 0) w.Raw(",");
    w.Newline(depth + 2);
    w.Raw("{");
    w.Newline(depth + 3);
    w.Key("projection");
    w.Raw("{\"coefficients\": ");
    w.RealArray(c.projection.coefficients);
    w.Raw(", \"mean\": ");
    w.Real(c.projection.mean);
    w.Raw(", \"stddev\": ");
    w.Real(c.projection.stddev);
    w.Raw("},");
    w.Newline(depth + 3);
    w.Key("lb");
    w.Real(c.lb);
    w.Raw(", ");
    w.Key("ub");
    w.Real(c.ub);
    w.Raw(", ");
    w.Key("alpha");
    w.Real(c.alpha);
    w.Raw(", ");
    w.Key("gamma");
    w.Real(c.gamma);
    w.Newline(depth + 2);
    w.Raw("}");
  }
  w.Newline(depth + 1);
  w.Raw("]");
  w.Newline(depth);
  w.Raw("}");
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedProfile, "malformed profile: " + what);
}

const json& Field(const json& object, const char* key) {
  if (!object.is_object()) Malformed(std::string("expected object for ") + key);
  auto it = object.find(key);
  if (it == object.end()) Malformed(std::string("missing field '") + key + "'");
  return *it;
}

double ReadReal(const json& value, const char* what) {
  if (!value.is_number()) Malformed(std::string(what) + " must be a number");
  return value.get<double>();
}

std::size_t ReadCount(const json& value, const char* what) {
  if (!value.is_number_unsigned()) {
    Malformed(std::string(what) + " must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::vector<double> ReadRealArray(const json& value, const char* what) {
  if (!value.is_array()) Malformed(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) out.push_back(ReadReal(v, what));
  return out;
}

SimpleConstraint ReadSimple(const json& value) {
  SimpleConstraint simple;
  const json& conjuncts = Field(value, "conjuncts");
  if (!conjuncts.is_array()) Malformed("conjuncts must be an array");
  for (const auto& c : conjuncts) {
    BoundedConstraint bc;
    const json& projection = Field(c, "projection");
    bc.projection.coefficients =
        ReadRealArray(Field(projection, "coefficients"), "coefficients");
    bc.projection.mean = ReadReal(Field(projection, "mean"), "mean");
    bc.projection.stddev = ReadReal(Field(projection, "stddev"), "stddev");
    bc.lb = ReadReal(Field(c, "lb"), "lb");
    bc.ub = ReadReal(Field(c, "ub"), "ub");
    bc.alpha = ReadReal(Field(c, "alpha"), "alpha");
    bc.gamma = ReadReal(Field(c, "gamma"), "gamma");
    simple.conjuncts.push_back(std::move(bc));
  }
  return simple;
}

}  // namespace

std::string SerializeProfile(const ConformanceProfile& profile) {
  Writer w;
  w.Raw("{");
  w.Newline(1);
  w.Key("format_version");
  w.Integer(profile.format_version);
  w.Raw(",");
  w.Newline(1);
  w.Key("c_factor");
  w.Real(profile.c_factor);
  w.Raw(",");
  w.Newline(1);
  w.Key("schema");
  w.Raw("[");
  for (std::size_t i = 0; i < profile.schema.size(); ++i) {
    const auto& column = profile.schema[i];
    if (i > 0) w.Raw(",");
    w.Newline(2);
    w.Raw("{\"name\": ");
    w.String(column.name);
    w.Raw(", \"kind\": ");
    w.String(ColumnKindName(column.kind));
    w.Raw(", \"index\": ");
    w.Integer(static_cast<long long>(column.index));
    w.Raw("}");
  }
  w.Newline(1);
  w.Raw("],");
  w.Newline(1);
  w.Key("training_means");
  w.RealArray(profile.training_means);
  w.Raw(",");
  w.Newline(1);
  w.Key("global");
  WriteSimple(w, profile.global, 1);
  w.Raw(",");
  w.Newline(1);
  w.Key("disjunctive");
  w.Raw("[");
  for (std::size_t i = 0; i < profile.disjunctive.size(); ++i) {
    const auto& d = profile.disjunctive[i];
    if (i > 0) w.Raw(",");
    w.Newline(2);
    w.Raw("{");
    w.Newline(3);
    w.Key("attribute");
    w.String(d.attribute);
    w.Raw(",");
    w.Newline(3);
    w.Key("trained_row_counts");
    w.Raw("{");
    bool first = true;
    for (const auto& [value, count] : d.trained_row_counts) {
      if (!first) w.Raw(", ");
      first = false;
      w.Key(value);
      w.Integer(static_cast<long long>(count));
    }
    w.Raw("},");
    w.Newline(3);
    w.Key("branches");
    w.Raw("{");
    first = true;
    for (const auto& [value, branch] : d.branches) {
      if (!first) w.Raw(",");
      first = false;
      w.Newline(4);
      w.Key(value);
      WriteSimple(w, branch, 4);
    }
    if (!d.branches.empty()) w.Newline(3);
    w.Raw("}");
    w.Newline(2);
    w.Raw("}");
  }
  if (!profile.disjunctive.empty()) w.Newline(1);
  w.Raw("]");
  w.Newline(0);
  w.Raw("}\n");
  return w.Take();
}

ConformanceProfile DeserializeProfile(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Malformed(e.what());
  }
  if (!doc.is_object()) Malformed("top level must be an object");

  ConformanceProfile profile;
  const json& version = Field(doc, "format_version");
  if (!version.is_number_integer()) Malformed("format_version must be integer");
  profile.format_version = version.get<int>();
  if (profile.format_version != kProfileFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "unsupported profile format_version " +
                    std::to_string(profile.format_version) + " (expected " +
                    std::to_string(kProfileFormatVersion) + ")");
  }
  profile.c_factor = ReadReal(Field(doc, "c_factor"), "c_factor");

  const json& schema = Field(doc, "schema");
  if (!schema.is_array()) Malformed("schema must be an array");
  for (const auto& c : schema) {
    ColumnSchema column;
    const json& name = Field(c, "name");
    if (!name.is_string()) Malformed("column name must be a string");
    column.name = name.get<std::string>();
    const json& kind = Field(c, "kind");
    if (!kind.is_string()) Malformed("column kind must be a string");
    auto parsed = ParseColumnKind(kind.get<std::string>());
    if (!parsed) Malformed("unknown column kind '" + kind.get<std::string>() + "'");
    column.kind = *parsed;
    column.index = ReadCount(Field(c, "index"), "index");
    profile.schema.push_back(std::move(column));
  }

  profile.training_means =
      ReadRealArray(Field(doc, "training_means"), "training_means");
  profile.global = ReadSimple(Field(doc, "global"));

  const json& disjunctive = Field(doc, "disjunctive");
  if (!disjunctive.is_array()) Malformed("disjunctive must be an array");
  for (const auto& d : disjunctive) {
    DisjunctiveConstraint constraint;
    const json& attribute = Field(d, "attribute");
    if (!attribute.is_string()) Malformed("attribute must be a string");
    constraint.attribute = attribute.get<std::string>();
    const json& counts = Field(d, "trained_row_counts");
    if (!counts.is_object()) Malformed("trained_row_counts must be an object");
    for (const auto& [value, count] : counts.items()) {
      constraint.trained_row_counts[value] = ReadCount(count, "row count");
    }
    const json& branches = Field(d, "branches");
    if (!branches.is_object()) Malformed("branches must be an object");
    for (const auto& [value, branch] : branches.items()) {
      constraint.branches[value] = ReadSimple(branch);
    }
    profile.disjunctive.push_back(std::move(constraint));
  }

  ValidateProfile(profile);
  return profile;
}

void SaveProfile(const ConformanceProfile& profile, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << SerializeProfile(profile);
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

ConformanceProfile LoadProfile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return DeserializeProfile(buffer.str());
}

}  // namespace ccsynth
