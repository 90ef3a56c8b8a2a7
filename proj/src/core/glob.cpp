#include "core/glob.hpp"

namespace ocam::core {

namespace {

std::vector<std::string_view> split_segments(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t slash = s.find('/', start);
        if (slash == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, slash - start));
        start = slash + 1;
    }
    return out;
}

// '*' and '?' within one path segment, iterative with single backtrack point
bool segment_match(std::string_view pat, std::string_view str) {
    std::size_t p = 0, s = 0;
    std::size_t star_p = std::string_view::npos, star_s = 0;
    while (s < str.size()) {
        if (p < pat.size() && (pat[p] == str[s] || pat[p] == '?')) {
            ++p;
            ++s;
        } else if (p < pat.size() && pat[p] == '*') {
            star_p = p++;
            star_s = s;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            s = ++star_s;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
}

bool match_from(const std::vector<std::string_view>& pat,
                const std::vector<std::string_view>& path, std::size_t pi, std::size_t si) {
    if (pi == pat.size()) return si == path.size();
    if (pat[pi] == "**") {
        if (match_from(pat, path, pi + 1, si)) return true;
        return si < path.size() && match_from(pat, path, pi, si + 1);
    }
    return si < path.size() && segment_match(pat[pi], path[si]) &&
           match_from(pat, path, pi + 1, si + 1);
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
    if (pattern.empty()) return false;
    return match_from(split_segments(pattern), split_segments(path), 0, 0);
}

bool any_glob_match(const std::vector<std::string>& patterns, std::string_view path) {
    for (const auto& p : patterns) {
        if (glob_match(p, path)) return true;
    }
    return false;
}

}  // namespace ocam::core
