// Copyright 2026 The git-historian Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "db/dataset.hpp"

#include <fstream>

#include "core/errors.hpp"

namespace historian {

namespace {

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line_no) + ": " + what, line_no);
}

std::string required_string(const nlohmann::json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) malformed(line_no, std::string("missing string field '") + key + "'");
  std::string value = it->get<std::string>();
  if (value.empty()) malformed(line_no, std::string("empty field '") + key + "'");
  return value;
}

std::string optional_string(const nlohmann::json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) malformed(line_no, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

const nlohmann::json* optional_array(const nlohmann::json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  if (!it->is_array()) malformed(line_no, std::string("field '") + key + "' must be an array");
  return &*it;
}

std::vector<std::string> string_array(const nlohmann::json& j, const char* key, std::size_t line_no) {
  std::vector<std::string> out;
  if (const auto* arr = optional_array(j, key, line_no)) {
    for (const auto& v : *arr) {
      if (!v.is_string()) malformed(line_no, std::string("field '") + key + "' must hold strings");
      out.push_back(v.get<std::string>());
    }
  }
  return out;
}

}  // namespace

bool is_valid_file_status(std::string_view status) {
  return status == "Found" || status == "Modified" || status == "Removed" || status == "Split";
}

bool is_valid_category_pair(std::string_view category, std::string_view sub) {
  if (category == "DifferentBranchName") return sub == "DifferentBranchName";
  if (category == "Dir") {
    return sub == "ContentSplit" || sub == "FileModified" || sub == "FileRemoved" ||
           sub == "FileModified,FileRemoved";
  }
  if (category != "Meta" || sub.empty()) return false;
  int last = -1;
  while (true) {
    const auto comma = sub.find(',');
    const auto field = metadata_field_from_string(sub.substr(0, comma));
    if (!field || static_cast<int>(*field) <= last) return false;
    last = static_cast<int>(*field);
    if (comma == std::string_view::npos) return true;
    sub.remove_prefix(comma + 1);
  }
}

DatasetRecord dataset_record_from_json(const nlohmann::json& j, std::size_t line_no) {
  if (!j.is_object()) malformed(line_no, "expected a JSON object");
  DatasetRecord r;
  r.origin = required_string(j, "origin", line_no);
  r.raw_branch = required_string(j, "raw_branch", line_no);
  r.unified_branch = optional_string(j, "unified_branch", line_no);
  if (r.unified_branch.empty()) r.unified_branch = unify_branch_name(r.raw_branch).label();
  const std::string commit = required_string(j, "altered_commit", line_no);
  if (!ObjectId::is_valid(commit)) malformed(line_no, "altered_commit is not a 40-hex object id");
  r.altered_commit = ObjectId::parse(commit).str();
  r.snapshot_from = required_string(j, "snapshot_from", line_no);
  r.snapshot_to = required_string(j, "snapshot_to", line_no);
  r.category = required_string(j, "category", line_no);
  r.sub_category = required_string(j, "sub_category", line_no);
  if (!is_valid_category_pair(r.category, r.sub_category)) {
    malformed(line_no, "invalid category/sub_category '" + r.category + "'/'" + r.sub_category + "'");
  }
  if (const auto* files = optional_array(j, "files", line_no)) {
    for (const auto& f : *files) {
      if (!f.is_object()) malformed(line_no, "files entries must be objects");
      DatasetFile file{required_string(f, "path", line_no), required_string(f, "status", line_no)};
      if (!is_valid_file_status(file.status)) malformed(line_no, "invalid file status '" + file.status + "'");
      r.files.push_back(std::move(file));
    }
  }
  if (!r.files.empty() && r.category != "Dir") {
    malformed(line_no, "file modifications are only allowed on Dir records");
  }
  r.alteration_id = optional_string(j, "alteration_id", line_no);
  r.altered = string_array(j, "altered", line_no);
  if (const auto* secrets = optional_array(j, "secrets", line_no)) {
    for (const auto& s : *secrets) {
      if (!s.is_object()) malformed(line_no, "secrets entries must be objects");
      r.secrets.push_back({required_string(s, "path", line_no), required_string(s, "pattern", line_no),
                           optional_string(s, "label", line_no), required_string(s, "via", line_no)});
    }
  }
  if (const auto* licenses = optional_array(j, "licenses", line_no)) {
    for (const auto& l : *licenses) {
      if (!l.is_object()) malformed(line_no, "licenses entries must be objects");
      DatasetLicense lic;
      lic.path = required_string(l, "path", line_no);
      lic.before = string_array(l, "before", line_no);
      lic.after = string_array(l, "after", line_no);
      lic.change = required_string(l, "change", line_no);
      if (!license_change_from_string(lic.change)) malformed(line_no, "invalid license change '" + lic.change + "'");
      r.licenses.push_back(std::move(lic));
    }
  }
  return r;
}

DatasetRecord parse_dataset_line(std::string_view line, std::size_t line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(line_no, std::string("invalid JSON: ") + e.what());
  }
  return dataset_record_from_json(j, line_no);
}

nlohmann::ordered_json to_json(const DatasetRecord& r) {
  nlohmann::ordered_json j;
  j["origin"] = r.origin;
  j["raw_branch"] = r.raw_branch;
  j["unified_branch"] = r.unified_branch;
  j["altered_commit"] = r.altered_commit;
  j["snapshot_from"] = r.snapshot_from;
  j["snapshot_to"] = r.snapshot_to;
  j["category"] = r.category;
  j["sub_category"] = r.sub_category;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : r.files) j["files"].push_back({{"path", f.path}, {"status", f.status}});
  if (!r.alteration_id.empty()) j["alteration_id"] = r.alteration_id;
  if (!r.altered.empty()) j["altered"] = r.altered;
  if (!r.secrets.empty()) {
    auto& arr = j["secrets"] = nlohmann::ordered_json::array();
    for (const auto& s : r.secrets) {
      arr.push_back({{"path", s.path}, {"pattern", s.pattern}, {"label", s.label}, {"via", s.via}});
    }
  }
  if (!r.licenses.empty()) {
    auto& arr = j["licenses"] = nlohmann::ordered_json::array();
    for (const auto& l : r.licenses) {
      arr.push_back({{"path", l.path}, {"before", l.before}, {"after", l.after}, {"change", l.change}});
    }
  }
  return j;
}

std::string to_dataset_line(const DatasetRecord& record) { return to_json(record).dump(); }

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset " + path.string());
  std::vector<DatasetRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(parse_dataset_line(line, line_no));
  }
  return records;
}

DatasetRecord dataset_record_from(const AlterationRecord& a, const std::vector<SecretFinding>& secrets,
                                  const std::vector<LicenseFinding>& licenses) {
  DatasetRecord r;
  r.origin = a.origin;
  r.raw_branch = a.branch.raw_name;
  r.unified_branch = a.branch.label();
  r.altered_commit = a.root_cause.str();
  r.snapshot_from = a.snapshot_from;
  r.snapshot_to = a.snapshot_to;
  r.category = category_tag(a.category);
  r.sub_category = sub_category_tag(a.category);
  if (const auto* dir = std::get_if<DirChange>(&a.category)) {
    for (const auto& fate : dir->fates) r.files.push_back({fate.path, to_string(fate.outcome)});
  }
  r.alteration_id = a.alteration_id;
  for (const auto& id : a.altered) r.altered.push_back(id.str());
  for (const auto& s : secrets) {
    if (s.root_cause != a.root_cause || s.branch != a.branch.raw_name || s.origin != a.origin) continue;
    r.secrets.push_back({s.path, s.matched.pattern, s.matched.label,
                         s.via == MatchVia::kFilename ? "filename" : "content"});
  }
  for (const auto& l : licenses) {
    if (l.root_cause != a.root_cause || l.branch != a.branch.raw_name || l.origin != a.origin) continue;
    DatasetLicense lic{l.path, {}, {}, to_string(l.change_class)};
    for (const auto& id : l.before) lic.before.push_back(id.str());
    for (const auto& id : l.after) lic.after.push_back(id.str());
    r.licenses.push_back(std::move(lic));
  }
  return r;
}

}  // namespace historian
