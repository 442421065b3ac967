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

#ifndef GITHISTORIAN_H
#define GITHISTORIAN_H

/* C interface of libgithistorian. Every handle is opaque. Functions return a
 * gh_status; on failure the message is available from gh_last_error_message()
 * on the same thread until the next call. Strings handed out by the library
 * are released with gh_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(GH_BUILDING_LIBRARY)
#define GH_API __attribute__((visibility("default")))
#else
#define GH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gh_status {
  GH_OK = 0,
  GH_E_INVALID_ARGUMENT,
  GH_E_MALFORMED_ID,
  GH_E_MALFORMED_RECORD,
  GH_E_MISSING_OBJECT,
  GH_E_INSUFFICIENT_SNAPSHOTS,
  GH_E_NETWORK,
  GH_E_CORRUPT_REMOTE,
  GH_E_NON_MONOTONIC_CAPTURE,
  GH_E_STORAGE,
  GH_E_NOT_A_REPOSITORY,
  GH_E_NO_REMOTE,
  GH_E_IDENTICAL_COMMITS,
  GH_E_TOOLCHAIN,
  GH_E_IO,
  GH_E_INTERNAL
} gh_status;

typedef enum gh_branch_filter { GH_BRANCH_MAIN = 0, GH_BRANCH_DEV, GH_BRANCH_ALL } gh_branch_filter;
typedef enum gh_format { GH_FORMAT_TEXT = 0, GH_FORMAT_JSON } gh_format;

typedef struct gh_database gh_database;
typedef struct gh_archive gh_archive;

GH_API const char* gh_version(void);
/* "InvalidArgument", "StorageFailure", ... */
GH_API const char* gh_status_name(gh_status status);
/* Process exit code for a failed command: 2 usage or malformed input, 3 I/O,
 * 4 storage, 5 repository setup, 6 remote, 7 missing data, 8 toolchain or
 * internal. GH_OK maps to 0. */
GH_API int gh_status_exit_code(gh_status status);
GH_API const char* gh_last_error_message(void);
GH_API void gh_string_free(char* s);

/* Branch filter and format names as accepted on the command line. */
GH_API gh_status gh_parse_branch_filter(const char* name, gh_branch_filter* out);
GH_API gh_status gh_parse_format(const char* name, gh_format* out);
/* Lowercase form of a 40 hex digit object id. */
GH_API gh_status gh_parse_object_id(const char* text, char** out);

GH_API gh_status gh_default_state_dir(char** out);
/* state_dir NULL: the default state directory. */
GH_API gh_status gh_default_database_path(const char* state_dir, char** out);

/* ---- database ---- */

/* path NULL: the default database path. Parent directories are created. */
GH_API gh_status gh_database_open(const char* path, gh_database** out);
GH_API void gh_database_close(gh_database* db);

typedef struct gh_load_summary {
  uint64_t inserted;
  uint64_t skipped_duplicates;
  uint64_t errors;
  char* dataset_version;
  char* error_details; /* "line N: message\n" per reported error */
} gh_load_summary;

GH_API gh_status gh_database_load(gh_database* db, const char* dataset_path, unsigned workers,
                                  gh_load_summary* out);
GH_API void gh_load_summary_free(gh_load_summary* summary);
GH_API gh_status gh_database_version(gh_database* db, char** out);
GH_API gh_status gh_database_state_digest(gh_database* db, char** out);
GH_API gh_status gh_database_counts(gh_database* db, uint64_t* alterations, uint64_t* files);

/* ---- check ---- */

typedef struct gh_check_options {
  const char* origin;
  gh_branch_filter filter;
  int verbose;
  gh_format format;
  const char* state_dir; /* NULL: default */
  int has_now;           /* report timestamp override */
  int64_t now_seconds;
  const char* event; /* NULL or "pull", "merge", "checkout" */
} gh_check_options;

typedef struct gh_check_result {
  char* out;
  char* err;
  char* report_path;
  uint64_t record_count;
  int exit_code; /* 0 clean, 1 alterations found */
  int cached;
} gh_check_result;

GH_API gh_status gh_check(gh_database* db, const gh_check_options* options, gh_check_result* out);
GH_API gh_status gh_check_cached(gh_database* db, const gh_check_options* options,
                                 gh_check_result* out);
GH_API void gh_check_result_free(gh_check_result* result);

/* ---- hooks ---- */

typedef struct gh_attach_options {
  const char* repo_path;  /* NULL: "." */
  gh_branch_filter filter;
  int verbose;            /* hooks ask for the verbose listing */
  const char* executable; /* NULL: this process's executable */
} gh_attach_options;

/* On success *text receives the confirmation block. */
GH_API gh_status gh_attach(const gh_attach_options* options, char** text);

/* ---- snapshot archive ---- */

GH_API gh_status gh_archive_open(const char* archive_root, const char* origin, gh_archive** out);
GH_API void gh_archive_close(gh_archive* archive);
/* fetch_url NULL: the origin. has_time 0: wall clock. */
GH_API gh_status gh_archive_capture(gh_archive* archive, const char* fetch_url, int has_time,
                                    int64_t captured_at, char** snapshot_id, uint64_t* ref_count);
GH_API size_t gh_archive_snapshot_count(const gh_archive* archive);

/* ---- pipeline ---- */

typedef struct gh_detect_options {
  const char* archive_root;
  const char* out_path; /* NULL: do not write a dataset */
  unsigned workers;     /* 0: hardware concurrency */
  int licenses_all_branches;
} gh_detect_options;

/* *summary receives the per-category table and warnings. */
GH_API gh_status gh_detect(const gh_detect_options* options, char** summary, uint64_t* record_count);

/* group_by: "branch", "category" or "license-change". */
GH_API gh_status gh_report(const char* dataset_path, const char* group_by, char** table);

/* Scenario names as listed by gh_scenario_kinds ("AmendMessage", ...). */
GH_API gh_status gh_generate(const char* kind, uint64_t seed, const char* out_dir, char** truth_json);
/* Newline separated. */
GH_API gh_status gh_scenario_kinds(char** names);
/* Writes `count` synthetic records with a 50/30/20 main/dev/pull mix. */
GH_API gh_status gh_generate_synthetic(uint64_t count, uint64_t seed, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif
