#include "ingest/loc_count.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "core/glob.hpp"

namespace ocam::ingest {

namespace {

const CommentRules kCStyle{{"//"}, {{"/*", "*/"}}};
const CommentRules kXmlStyle{{}, {{"<!--", "-->"}}};
const CommentRules kHashStyle{{"#"}, {}};

bool starts_at(const std::string& line, std::size_t pos, const std::string& token) {
    return line.compare(pos, token.size(), token) == 0;
}

}  // namespace

const CommentRules& rules_for_extension(const std::string& extension) {
    static const std::map<std::string, const CommentRules*> by_ext = {
        {".java", &kCStyle}, {".c", &kCStyle},    {".h", &kCStyle},
        {".cpp", &kCStyle},  {".hpp", &kCStyle},  {".cc", &kCStyle},
        {".cs", &kCStyle},   {".kt", &kCStyle},   {".scala", &kCStyle},
        {".js", &kCStyle},   {".ts", &kCStyle},   {".go", &kCStyle},
        {".xml", &kXmlStyle}, {".html", &kXmlStyle}, {".xhtml", &kXmlStyle},
        {".py", &kHashStyle}, {".sh", &kHashStyle}, {".yaml", &kHashStyle},
        {".yml", &kHashStyle}, {".properties", &kHashStyle},
    };
    std::string ext = extension;
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const auto it = by_ext.find(ext);
    return it != by_ext.end() ? *it->second : kCStyle;
}

std::int64_t count_code_lines(std::istream& stream, const CommentRules& rules) {
    std::int64_t count = 0;
    std::string line;
    std::size_t open_block = 0;  // index into block_pairs when inside one
    bool in_block = false;

    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool has_code = false;
        std::size_t i = 0;
        while (i < line.size()) {
            if (in_block) {
                const auto& close = rules.block_pairs[open_block].second;
                const std::size_t pos = line.find(close, i);
                if (pos == std::string::npos) {
                    i = line.size();
                } else {
                    i = pos + close.size();
                    in_block = false;
                }
                continue;
            }
            bool matched = false;
            for (std::size_t b = 0; b < rules.block_pairs.size(); ++b) {
                if (starts_at(line, i, rules.block_pairs[b].first)) {
                    in_block = true;
                    open_block = b;
                    i += rules.block_pairs[b].first.size();
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            bool line_comment = false;
            for (const auto& prefix : rules.line_prefixes) {
                if (starts_at(line, i, prefix)) {
                    line_comment = true;
                    break;
                }
            }
            if (line_comment) break;
            if (!std::isspace(static_cast<unsigned char>(line[i]))) has_code = true;
            ++i;
        }
        if (has_code) ++count;
    }
    return count;
}

LocCountResult count_lines(const std::filesystem::path& root,
                           const std::vector<std::string>& globs) {
    namespace fs = std::filesystem;
    LocCountResult result;
    if (!fs::exists(root)) {
        result.diagnostics.warn("source tree does not exist: " + root.string());
        return result;
    }

    std::vector<fs::path> files;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
        if (ec) {
            result.diagnostics.warn("error walking " + root.string() + ": " + ec.message());
            break;
        }
        if (!it->is_regular_file()) continue;
        files.push_back(it->path());
    }
    // deterministic over directory iteration order
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
        const std::string rel = fs::relative(path, root).generic_string();
        if (!core::any_glob_match(globs, rel)) continue;
        std::ifstream in(path);
        if (!in) {
            result.diagnostics.warn("unreadable file skipped: " + path.string());
            continue;
        }
        result.loc += count_code_lines(in, rules_for_extension(path.extension().string()));
        ++result.files_counted;
    }
    return result;
}

}  // namespace ocam::ingest
