#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ocam::core {

/// Path glob matching against '/'-separated relative paths.
/// Supports '*' (within a segment), '?' (single character within a
/// segment) and '**' (any number of whole segments, including none).
bool glob_match(std::string_view pattern, std::string_view path);

/// True if any pattern matches. An empty pattern list matches nothing.
bool any_glob_match(const std::vector<std::string>& patterns, std::string_view path);

}  // namespace ocam::core
