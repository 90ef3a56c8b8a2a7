#pragma once

#include <istream>
#include <string>
#include <vector>

#include "core/identity.hpp"
#include "core/records.hpp"
#include "core/result.hpp"
#include "ingest/diagnostics.hpp"

#include "json.hpp"

namespace ocam::ingest {

enum class EventKind { pull_request, ticket };

struct ItemLoadResult {
    std::vector<core::CreatedItemRecord> records;
    IngestDiagnostics diagnostics;
};

struct TdIssueLoadResult {
    std::vector<core::TdIssueRecord> records;
    IngestDiagnostics diagnostics;
};

struct SizeLoadResult {
    std::vector<core::SizeSnapshot> records;
    IngestDiagnostics diagnostics;
};

/// JSONL, one record per line:
/// {item_id, author_name, author_email, created_at, component_id}
ItemLoadResult load_items(std::istream& stream, EventKind kind,
                          core::IdentityResolver& resolver);

/// JSONL: {issue_id, component_id, remediation_minutes, introduced_at,
/// removed_at?}. Records with removed_at <= introduced_at, negative
/// remediation or duplicate issue ids are rejected.
TdIssueLoadResult load_td_issues(std::istream& stream);

/// Commits as JSONL: {hash, author_name, author_email, timestamp,
/// files:[{path, additions, deletions}], is_merge?}. Files are matched
/// against the component's globs the same way the numstat parser does.
struct CommitJsonlResult {
    std::vector<core::CommitRecord> commits;
    IngestDiagnostics diagnostics;
};
CommitJsonlResult load_commits_jsonl(std::istream& stream,
                                     const core::ComponentSpec& component,
                                     core::IdentityResolver& resolver);

/// sizes.csv: component_id,week,loc (header line optional).
SizeLoadResult load_sizes_csv(std::istream& stream);

/// affiliations.json: [{canonical_id, team_id, start, end?}]
core::Result<core::AffiliationTimeline> load_affiliations(std::istream& stream);

/// aliases.json: {"raw_email": "canonical_id", ...}
core::Result<core::AliasMap> load_aliases(std::istream& stream);

// canonical (normalized, UTC) serializations for the event store
nlohmann::ordered_json commit_to_json(const core::CommitRecord& r);
nlohmann::ordered_json item_to_json(const core::CreatedItemRecord& r);
nlohmann::ordered_json td_issue_to_json(const core::TdIssueRecord& r);

/// Loads normalized commits back from the event store.
struct NormalizedCommitsResult {
    std::vector<core::CommitRecord> commits;
    IngestDiagnostics diagnostics;
};
NormalizedCommitsResult load_normalized_commits(std::istream& stream);

}  // namespace ocam::ingest
