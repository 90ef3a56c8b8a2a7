#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "ingest/diagnostics.hpp"

namespace ocam::ingest {

/// Comment syntax for one file kind.
struct CommentRules {
    std::vector<std::string> line_prefixes;
    std::vector<std::pair<std::string, std::string>> block_pairs;
};

/// Built-in rules by file extension (".java", ".xml", ...); C-style
/// comments for unknown extensions.
const CommentRules& rules_for_extension(const std::string& extension);

/// Lines that are non-blank and not entirely inside comments. Block
/// comments are tracked with a per-file state machine; string literals
/// are not interpreted.
std::int64_t count_code_lines(std::istream& stream, const CommentRules& rules);

struct LocCountResult {
    std::int64_t loc = 0;
    std::int64_t files_counted = 0;
    IngestDiagnostics diagnostics;
};

/// Walks `root`, counts code lines of files matching the globs
/// (paths relative to root, '/' separators). Unreadable files are
/// skipped with a warning.
LocCountResult count_lines(const std::filesystem::path& root,
                           const std::vector<std::string>& globs);

}  // namespace ocam::ingest
