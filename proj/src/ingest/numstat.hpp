#pragma once

#include <istream>
#include <vector>

#include "core/identity.hpp"
#include "core/records.hpp"
#include "ingest/diagnostics.hpp"

namespace ocam::ingest {

struct CommitParseResult {
    std::vector<core::CommitRecord> commits;
    IngestDiagnostics diagnostics;
};

/// Parses `git log --numstat --date=iso-strict
/// --pretty=format:'@%H|%an|%ae|%ad|%P'` output. Additions and
/// deletions are summed over numstat lines matching the component's
/// path globs; "-" (binary) counts as zero churn but still marks the
/// file as touched; commits touching no matching file are dropped.
CommitParseResult parse_git_numstat(std::istream& stream, const core::ComponentSpec& component,
                                    core::IdentityResolver& resolver);

}  // namespace ocam::ingest
