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

#include "db/database.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <fstream>
#include <thread>
#include <variant>

#include "core/clock.hpp"
#include "core/errors.hpp"
#include "core/hash.hpp"

namespace historian {

namespace {

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS alterations (
  id INTEGER PRIMARY KEY,
  origin TEXT NOT NULL,
  raw_branch TEXT NOT NULL,
  unified_branch TEXT NOT NULL,
  altered_commit TEXT NOT NULL,
  snapshot_from TEXT NOT NULL,
  snapshot_to TEXT NOT NULL,
  category TEXT NOT NULL CHECK (category IN ('Meta', 'Dir', 'DifferentBranchName')),
  sub_category TEXT NOT NULL,
  recorded_at TEXT NOT NULL,
  UNIQUE (origin, raw_branch, altered_commit, snapshot_to)
);
CREATE INDEX IF NOT EXISTS alterations_by_origin ON alterations (origin, unified_branch);
CREATE TABLE IF NOT EXISTS file_modifications (
  id INTEGER PRIMARY KEY,
  alteration_id INTEGER NOT NULL REFERENCES alterations (id) ON DELETE CASCADE,
  file_path TEXT NOT NULL,
  status TEXT NOT NULL CHECK (status IN ('Modified', 'Removed', 'Split', 'Found'))
);
CREATE INDEX IF NOT EXISTS file_modifications_by_alteration ON file_modifications (alteration_id);
CREATE TRIGGER IF NOT EXISTS file_modifications_dir_only
BEFORE INSERT ON file_modifications
WHEN (SELECT category FROM alterations WHERE id = NEW.alteration_id) IS NOT 'Dir'
BEGIN
  SELECT RAISE(ABORT, 'file modification without a Dir alteration');
END;
CREATE TABLE IF NOT EXISTS meta (
  key TEXT PRIMARY KEY,
  value TEXT NOT NULL
);
)sql";

constexpr std::size_t kMaxErrorDetails = 20;

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(ErrorCode::kStorageFailure, std::string("prepare failed: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int index, std::string_view text) {
    check(sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind(int index, std::int64_t value) {
    check(sqlite3_bind_int64(stmt_, index, value));
    return *this;
  }
  /// True while rows remain.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(ErrorCode::kStorageFailure, std::string("step failed: ") + sqlite3_errmsg(db_));
  }
  void reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }
  std::string text(int col) const {
    const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p == nullptr ? std::string() : std::string(p, sqlite3_column_bytes(stmt_, col));
  }
  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) {
      throw Error(ErrorCode::kStorageFailure, std::string("bind failed: ") + sqlite3_errmsg(db_));
    }
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

std::string next_version(const std::string& previous) {
  std::int64_t micros = now_micros();
  if (auto old = parse_rfc3339_micros(previous); old && micros <= *old) micros = *old + 1;
  return format_rfc3339_micros(micros);
}

}  // namespace

const char* to_string(BranchFilter filter) noexcept {
  switch (filter) {
    case BranchFilter::kMainOnly: return "main";
    case BranchFilter::kDevOnly: return "dev";
    case BranchFilter::kAll: return "all";
  }
  return "all";
}

std::optional<BranchFilter> branch_filter_from_string(std::string_view name) {
  if (name == "main") return BranchFilter::kMainOnly;
  if (name == "dev") return BranchFilter::kDevOnly;
  if (name == "all") return BranchFilter::kAll;
  return std::nullopt;
}

Database::Database(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (sqlite3_open_v2(path.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string msg = db_ != nullptr ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw Error(ErrorCode::kStorageFailure, "cannot open database " + path.string() + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 10000);
  try {
    exec("PRAGMA journal_mode = WAL");
    exec("PRAGMA foreign_keys = ON");
    exec(kSchema);
  } catch (...) {
    sqlite3_close(db_);
    db_ = nullptr;
    throw;
  }
}

Database::~Database() {
  if (db_ != nullptr) sqlite3_close(db_);
}

Database::Database(Database&& other) noexcept
    : path_(std::move(other.path_)), db_(std::exchange(other.db_, nullptr)) {}

Database& Database::operator=(Database&& other) noexcept {
  if (this != &other) {
    if (db_ != nullptr) sqlite3_close(db_);
    path_ = std::move(other.path_);
    db_ = std::exchange(other.db_, nullptr);
  }
  return *this;
}

void Database::exec(const char* sql) const {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err != nullptr ? err : "unknown error";
    sqlite3_free(err);
    throw Error(ErrorCode::kStorageFailure, "sqlite: " + msg);
  }
}

LoadSummary Database::load_file(const std::filesystem::path& path, unsigned workers) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset " + path.string());
  return load_records(in, workers);
}

LoadSummary Database::load_records(std::istream& in, unsigned workers) {
  struct Line {
    std::size_t number;
    std::string text;
  };
  std::vector<Line> lines;
  {
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
      ++number;
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.push_back({number, std::move(text)});
    }
  }

  using Parsed = std::variant<DatasetRecord, LoadError>;
  std::vector<Parsed> parsed(lines.size());
  auto parse_range = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < lines.size(); i += stride) {
      try {
        parsed[i] = parse_dataset_line(lines[i].text, lines[i].number);
      } catch (const Error& e) {
        parsed[i] = LoadError{lines[i].number, e.what()};
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(lines.size(), 1))));
  if (workers == 1) {
    parse_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(parse_range, t, workers);
    for (auto& th : pool) th.join();
  }

  LoadSummary summary;
  const std::string recorded_at = format_rfc3339_micros(now_micros());
  exec("BEGIN IMMEDIATE");
  try {
    Statement insert(db_,
                     "INSERT OR IGNORE INTO alterations (origin, raw_branch, unified_branch, altered_commit, "
                     "snapshot_from, snapshot_to, category, sub_category, recorded_at) "
                     "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)");
    Statement insert_file(db_,
                          "INSERT INTO file_modifications (alteration_id, file_path, status) VALUES (?, ?, ?)");
    for (const Parsed& p : parsed) {
      if (const auto* err = std::get_if<LoadError>(&p)) {
        ++summary.errors;
        if (summary.error_details.size() < kMaxErrorDetails) summary.error_details.push_back(*err);
        continue;
      }
      const auto& r = std::get<DatasetRecord>(p);
      insert.reset();
      insert.bind(1, r.origin).bind(2, r.raw_branch).bind(3, r.unified_branch).bind(4, r.altered_commit);
      insert.bind(5, r.snapshot_from).bind(6, r.snapshot_to).bind(7, r.category).bind(8, r.sub_category);
      insert.bind(9, recorded_at);
      insert.step();
      if (sqlite3_changes(db_) == 0) {
        ++summary.skipped_duplicates;
        continue;
      }
      ++summary.inserted;
      const std::int64_t id = sqlite3_last_insert_rowid(db_);
      for (const auto& f : r.files) {
        insert_file.reset();
        insert_file.bind(1, id).bind(2, f.path).bind(3, f.status);
        insert_file.step();
      }
    }
    summary.dataset_version = next_version(dataset_version());
    Statement version(db_, "INSERT OR REPLACE INTO meta (key, value) VALUES ('dataset_version', ?)");
    version.bind(1, summary.dataset_version);
    version.step();
    exec("COMMIT");
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
  return summary;
}

std::vector<StoredAlteration> Database::query_by_origin(std::string_view origin,
                                                        BranchFilter filter) const {
  std::string sql =
      "SELECT id, origin, raw_branch, unified_branch, altered_commit, snapshot_from, snapshot_to, "
      "category, sub_category, recorded_at FROM alterations WHERE origin = ?";
  if (filter == BranchFilter::kMainOnly) sql += " AND unified_branch = 'main'";
  if (filter == BranchFilter::kDevOnly) sql += " AND unified_branch = 'development'";
  sql += " ORDER BY raw_branch, snapshot_to, altered_commit";
  Statement select(db_, sql.c_str());
  select.bind(1, origin);
  std::vector<StoredAlteration> out;
  while (select.step()) {
    StoredAlteration a;
    a.id = select.integer(0);
    a.origin = select.text(1);
    a.raw_branch = select.text(2);
    a.unified_branch = select.text(3);
    a.altered_commit = select.text(4);
    a.snapshot_from = select.text(5);
    a.snapshot_to = select.text(6);
    a.category = select.text(7);
    a.sub_category = select.text(8);
    a.recorded_at = select.text(9);
    out.push_back(std::move(a));
  }
  Statement files(db_,
                  "SELECT file_path, status FROM file_modifications WHERE alteration_id = ? "
                  "ORDER BY file_path, status");
  for (auto& a : out) {
    files.reset();
    files.bind(1, a.id);
    while (files.step()) a.files.push_back({files.text(0), files.text(1)});
  }
  return out;
}

std::string Database::dataset_version() const {
  Statement select(db_, "SELECT value FROM meta WHERE key = 'dataset_version'");
  return select.step() ? select.text(0) : std::string();
}

std::size_t Database::alteration_count() const {
  Statement select(db_, "SELECT COUNT(*) FROM alterations");
  select.step();
  return static_cast<std::size_t>(select.integer(0));
}

std::size_t Database::file_modification_count() const {
  Statement select(db_, "SELECT COUNT(*) FROM file_modifications");
  select.step();
  return static_cast<std::size_t>(select.integer(0));
}

std::string Database::state_digest() const {
  Statement select(db_,
                   "SELECT a.origin, a.raw_branch, a.unified_branch, a.altered_commit, a.snapshot_from, "
                   "a.snapshot_to, a.category, a.sub_category, "
                   "(SELECT group_concat(file_path || '\x1e' || status, '\x1d') FROM "
                   "  (SELECT file_path, status FROM file_modifications f WHERE f.alteration_id = a.id "
                   "   ORDER BY file_path, status)) "
                   "FROM alterations a ORDER BY a.origin, a.raw_branch, a.altered_commit, a.snapshot_to");
  std::string canonical;
  while (select.step()) {
    for (int col = 0; col < 9; ++col) {
      canonical += select.text(col);
      canonical += '\x1f';
    }
    canonical += '\n';
  }
  return sha1_hex(canonical);
}

}  // namespace historian
