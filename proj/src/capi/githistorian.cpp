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

#include "githistorian/githistorian.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "audit/check.hpp"
#include "audit/hooks.hpp"
#include "audit/pipeline.hpp"
#include "audit/report.hpp"
#include "audit/state.hpp"
#include "core/errors.hpp"
#include "core/object_id.hpp"
#include "corpus/generator.hpp"
#include "db/database.hpp"
#include "db/dataset.hpp"
#include "store/snapshot_store.hpp"

using namespace historian;

struct gh_database {
  Database db;
};

struct gh_archive {
  OriginArchive archive;
};

namespace {

thread_local std::string g_last_error;

gh_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return GH_E_INVALID_ARGUMENT;
    case ErrorCode::kMalformedId: return GH_E_MALFORMED_ID;
    case ErrorCode::kMalformedRecord: return GH_E_MALFORMED_RECORD;
    case ErrorCode::kMissingObject: return GH_E_MISSING_OBJECT;
    case ErrorCode::kInsufficientSnapshots: return GH_E_INSUFFICIENT_SNAPSHOTS;
    case ErrorCode::kNetworkFailure: return GH_E_NETWORK;
    case ErrorCode::kCorruptRemote: return GH_E_CORRUPT_REMOTE;
    case ErrorCode::kNonMonotonicCapture: return GH_E_NON_MONOTONIC_CAPTURE;
    case ErrorCode::kStorageFailure: return GH_E_STORAGE;
    case ErrorCode::kNotARepository: return GH_E_NOT_A_REPOSITORY;
    case ErrorCode::kNoRemoteConfigured: return GH_E_NO_REMOTE;
    case ErrorCode::kIdenticalCommits: return GH_E_IDENTICAL_COMMITS;
    case ErrorCode::kToolchainFailure: return GH_E_TOOLCHAIN;
    case ErrorCode::kIo: return GH_E_IO;
  }
  return GH_E_INTERNAL;
}

gh_status fail(gh_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs `body`, translating every exception into a status.
template <typename F>
gh_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return GH_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GH_E_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(GH_E_IO, e.what());
  } catch (const std::exception& e) {
    return fail(GH_E_INTERNAL, e.what());
  } catch (...) {
    return fail(GH_E_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, what);
}

BranchFilter to_filter(gh_branch_filter f) {
  switch (f) {
    case GH_BRANCH_MAIN: return BranchFilter::kMainOnly;
    case GH_BRANCH_DEV: return BranchFilter::kDevOnly;
    case GH_BRANCH_ALL: return BranchFilter::kAll;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown branch filter");
}

CheckOptions to_check_options(const gh_check_options* o) {
  require(o != nullptr && o->origin != nullptr && *o->origin != '\0', "check needs an origin URL");
  CheckOptions options;
  options.origin = o->origin;
  options.filter = to_filter(o->filter);
  options.verbose = o->verbose != 0;
  options.format = o->format == GH_FORMAT_JSON ? OutputFormat::kJson : OutputFormat::kText;
  options.state_dir = o->state_dir != nullptr ? std::filesystem::path(o->state_dir) : default_state_dir();
  if (o->has_now) options.now_seconds = o->now_seconds;
  if (o->event != nullptr) options.event = o->event;
  return options;
}

void fill_check_result(const CheckOutput& r, gh_check_result* out) {
  *out = {};
  out->out = dup(r.out);
  out->err = dup(r.err);
  out->report_path = dup(r.report_path.string());
  out->record_count = r.record_count;
  out->exit_code = r.exit_code;
  out->cached = r.cached ? 1 : 0;
}

}  // namespace

extern "C" {

GH_API const char* gh_version(void) { return GITHISTORIAN_VERSION; }

GH_API const char* gh_status_name(gh_status status) {
  switch (status) {
    case GH_OK: return "Ok";
    case GH_E_INVALID_ARGUMENT: return "InvalidArgument";
    case GH_E_MALFORMED_ID: return "MalformedId";
    case GH_E_MALFORMED_RECORD: return "MalformedRecord";
    case GH_E_MISSING_OBJECT: return "MissingObject";
    case GH_E_INSUFFICIENT_SNAPSHOTS: return "InsufficientSnapshots";
    case GH_E_NETWORK: return "NetworkFailure";
    case GH_E_CORRUPT_REMOTE: return "CorruptRemote";
    case GH_E_NON_MONOTONIC_CAPTURE: return "NonMonotonicCapture";
    case GH_E_STORAGE: return "StorageFailure";
    case GH_E_NOT_A_REPOSITORY: return "NotARepository";
    case GH_E_NO_REMOTE: return "NoRemoteConfigured";
    case GH_E_IDENTICAL_COMMITS: return "IdenticalCommits";
    case GH_E_TOOLCHAIN: return "ToolchainFailure";
    case GH_E_IO: return "Io";
    case GH_E_INTERNAL: return "Internal";
  }
  return "Internal";
}

GH_API int gh_status_exit_code(gh_status status) {
  switch (status) {
    case GH_OK: return 0;
    case GH_E_INVALID_ARGUMENT:
    case GH_E_MALFORMED_ID:
    case GH_E_MALFORMED_RECORD:
    case GH_E_NON_MONOTONIC_CAPTURE: return 2;
    case GH_E_IO: return 3;
    case GH_E_STORAGE: return 4;
    case GH_E_NOT_A_REPOSITORY:
    case GH_E_NO_REMOTE: return 5;
    case GH_E_NETWORK:
    case GH_E_CORRUPT_REMOTE: return 6;
    case GH_E_MISSING_OBJECT:
    case GH_E_INSUFFICIENT_SNAPSHOTS: return 7;
    case GH_E_IDENTICAL_COMMITS:
    case GH_E_TOOLCHAIN:
    case GH_E_INTERNAL: return 8;
  }
  return 8;
}

GH_API const char* gh_last_error_message(void) { return g_last_error.c_str(); }

GH_API void gh_string_free(char* s) { std::free(s); }

GH_API gh_status gh_parse_branch_filter(const char* name, gh_branch_filter* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    const auto f = branch_filter_from_string(name);
    if (!f) throw Error(ErrorCode::kInvalidArgument, std::string("unknown branch filter '") + name + "'");
    *out = *f == BranchFilter::kMainOnly ? GH_BRANCH_MAIN : *f == BranchFilter::kDevOnly ? GH_BRANCH_DEV : GH_BRANCH_ALL;
  });
}

GH_API gh_status gh_parse_format(const char* name, gh_format* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    const std::string n = name;
    if (n == "text") {
      *out = GH_FORMAT_TEXT;
    } else if (n == "json") {
      *out = GH_FORMAT_JSON;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown format '" + n + "'");
    }
  });
}

GH_API gh_status gh_parse_object_id(const char* text, char** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = dup(ObjectId::parse(text).str());
  });
}

GH_API gh_status gh_default_state_dir(char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = dup(default_state_dir().string());
  });
}

GH_API gh_status gh_default_database_path(const char* state_dir, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const auto dir = state_dir != nullptr ? std::filesystem::path(state_dir) : default_state_dir();
    *out = dup(default_database_path(dir).string());
  });
}

GH_API gh_status gh_database_open(const char* path, gh_database** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    const std::filesystem::path p =
        path != nullptr ? std::filesystem::path(path) : default_database_path(default_state_dir());
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
      if (ec) throw Error(ErrorCode::kStorageFailure, "cannot create " + p.parent_path().string() + ": " + ec.message());
    }
    *out = new gh_database{Database(p)};
  });
}

GH_API void gh_database_close(gh_database* db) { delete db; }

GH_API gh_status gh_database_load(gh_database* db, const char* dataset_path, unsigned workers,
                                  gh_load_summary* out) {
  return guarded([&] {
    require(db != nullptr && dataset_path != nullptr && out != nullptr, "null argument");
    *out = {};
    const LoadSummary s = db->db.load_file(dataset_path, workers == 0 ? 1 : workers);
    std::string details;
    for (const auto& e : s.error_details) details += "line " + std::to_string(e.line) + ": " + e.message + "\n";
    out->inserted = s.inserted;
    out->skipped_duplicates = s.skipped_duplicates;
    out->errors = s.errors;
    out->dataset_version = dup(s.dataset_version);
    out->error_details = dup(details);
  });
}

GH_API void gh_load_summary_free(gh_load_summary* summary) {
  if (summary == nullptr) return;
  std::free(summary->dataset_version);
  std::free(summary->error_details);
  summary->dataset_version = nullptr;
  summary->error_details = nullptr;
}

GH_API gh_status gh_database_version(gh_database* db, char** out) {
  return guarded([&] {
    require(db != nullptr && out != nullptr, "null argument");
    *out = dup(db->db.dataset_version());
  });
}

GH_API gh_status gh_database_state_digest(gh_database* db, char** out) {
  return guarded([&] {
    require(db != nullptr && out != nullptr, "null argument");
    *out = dup(db->db.state_digest());
  });
}

GH_API gh_status gh_database_counts(gh_database* db, uint64_t* alterations, uint64_t* files) {
  return guarded([&] {
    require(db != nullptr, "null argument");
    if (alterations != nullptr) *alterations = db->db.alteration_count();
    if (files != nullptr) *files = db->db.file_modification_count();
  });
}

GH_API gh_status gh_check(gh_database* db, const gh_check_options* options, gh_check_result* out) {
  return guarded([&] {
    require(db != nullptr && out != nullptr, "null argument");
    fill_check_result(run_check(db->db, to_check_options(options)), out);
  });
}

GH_API gh_status gh_check_cached(gh_database* db, const gh_check_options* options,
                                 gh_check_result* out) {
  return guarded([&] {
    require(db != nullptr && out != nullptr, "null argument");
    fill_check_result(run_check_cached(db->db, to_check_options(options)), out);
  });
}

GH_API void gh_check_result_free(gh_check_result* result) {
  if (result == nullptr) return;
  std::free(result->out);
  std::free(result->err);
  std::free(result->report_path);
  *result = {};
}

GH_API gh_status gh_attach(const gh_attach_options* options, char** text) {
  return guarded([&] {
    require(options != nullptr && text != nullptr, "null argument");
    AttachOptions o;
    if (options->repo_path != nullptr) o.repo_path = options->repo_path;
    o.filter = to_filter(options->filter);
    o.verbose = options->verbose != 0;
    if (options->executable != nullptr) {
      o.executable = options->executable;
    } else if (auto self = current_executable(); !self.empty()) {
      o.executable = self;
    }
    *text = dup(render_attach_text(attach(o)));
  });
}

GH_API gh_status gh_archive_open(const char* archive_root, const char* origin, gh_archive** out) {
  return guarded([&] {
    require(archive_root != nullptr && origin != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new gh_archive{open_archive(archive_root, origin)};
  });
}

GH_API void gh_archive_close(gh_archive* archive) { delete archive; }

GH_API gh_status gh_archive_capture(gh_archive* archive, const char* fetch_url, int has_time,
                                    int64_t captured_at, char** snapshot_id, uint64_t* ref_count) {
  return guarded([&] {
    require(archive != nullptr, "null argument");
    CaptureOptions o;
    if (fetch_url != nullptr) o.fetch_url = fetch_url;
    if (has_time) o.captured_at = captured_at;
    const Snapshot s = capture(archive->archive, o);
    if (snapshot_id != nullptr) *snapshot_id = dup(s.snapshot_id);
    if (ref_count != nullptr) *ref_count = s.refs.size();
  });
}

GH_API size_t gh_archive_snapshot_count(const gh_archive* archive) {
  return archive == nullptr ? 0 : archive->archive.snapshots.size();
}

GH_API gh_status gh_detect(const gh_detect_options* options, char** summary, uint64_t* record_count) {
  return guarded([&] {
    require(options != nullptr && options->archive_root != nullptr, "detect needs an archive root");
    DetectOptions o;
    o.archive_root = options->archive_root;
    o.workers = options->workers;
    o.licenses_all_branches = options->licenses_all_branches != 0;
    const DetectResult result = run_detect(o);
    if (options->out_path != nullptr) write_dataset(result.records, options->out_path);
    if (summary != nullptr) *summary = dup(render_detect_summary(result.summary));
    if (record_count != nullptr) *record_count = result.records.size();
  });
}

GH_API gh_status gh_report(const char* dataset_path, const char* group_by, char** table) {
  return guarded([&] {
    require(dataset_path != nullptr && group_by != nullptr && table != nullptr, "null argument");
    const auto g = group_by_from_string(group_by);
    if (!g) throw Error(ErrorCode::kInvalidArgument, std::string("unknown grouping '") + group_by + "'");
    *table = dup(render_report(read_dataset(dataset_path), *g));
  });
}

GH_API gh_status gh_generate(const char* kind, uint64_t seed, const char* out_dir, char** truth_json) {
  return guarded([&] {
    require(kind != nullptr && out_dir != nullptr, "null argument");
    const auto k = scenario_kind_from_string(kind);
    if (!k) throw Error(ErrorCode::kInvalidArgument, std::string("unknown scenario kind '") + kind + "'");
    const GeneratedScenario g = generate(*k, seed, out_dir);
    if (truth_json != nullptr) *truth_json = dup(to_json(g.truth).dump(2) + "\n");
  });
}

GH_API gh_status gh_scenario_kinds(char** names) {
  return guarded([&] {
    require(names != nullptr, "null argument");
    std::string out;
    for (ScenarioKind k : all_scenario_kinds()) out += std::string(to_string(k)) + "\n";
    *names = dup(out);
  });
}

GH_API gh_status gh_generate_synthetic(uint64_t count, uint64_t seed, const char* out_path) {
  return guarded([&] {
    require(out_path != nullptr, "null argument");
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, std::string("cannot write ") + out_path);
    for (const DatasetRecord& r : generate_synthetic_dataset(count, seed)) out << to_dataset_line(r) << "\n";
    if (!out.flush()) throw Error(ErrorCode::kIo, std::string("cannot write ") + out_path);
  });
}

}  // extern "C"
