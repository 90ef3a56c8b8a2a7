#include "ingest/numstat.hpp"

#include <charconv>
#include <set>
#include <string>

#include "core/glob.hpp"

namespace ocam::ingest {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// "src/{old => new}/a.java" or "old.java => new.java": keep the new path
std::string normalize_rename(std::string_view path) {
    const std::size_t arrow = path.find(" => ");
    if (arrow == std::string_view::npos) return std::string(path);
    const std::size_t open = path.rfind('{', arrow);
    const std::size_t close = path.find('}', arrow);
    if (open != std::string_view::npos && close != std::string_view::npos) {
        std::string out(path.substr(0, open));
        out.append(path.substr(arrow + 4, close - arrow - 4));
        out.append(path.substr(close + 1));
        // collapse "//" left by an empty rename side
        std::string collapsed;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i] == '/' && !collapsed.empty() && collapsed.back() == '/') continue;
            collapsed.push_back(out[i]);
        }
        return collapsed;
    }
    return std::string(path.substr(arrow + 4));
}

bool parse_count(std::string_view field, std::int64_t& out) {
    if (field == "-") {  // binary file sentinel
        out = 0;
        return true;
    }
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc() && ptr == field.data() + field.size() && out >= 0;
}

struct PendingCommit {
    core::CommitRecord record;
    bool touched_component = false;
    bool valid = false;
};

}  // namespace

CommitParseResult parse_git_numstat(std::istream& stream,
                                    const core::ComponentSpec& component,
                                    core::IdentityResolver& resolver) {
    CommitParseResult result;
    auto& diag = result.diagnostics;
    const std::int64_t unknown_before = resolver.unknown_count();
    PendingCommit pending;
    std::set<std::string> seen_hashes;

    auto flush = [&]() {
        if (pending.valid && pending.touched_component) {
            result.commits.push_back(pending.record);
        }
        pending = PendingCommit{};
    };

    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (line[0] == '@') {
            flush();
            ++diag.records_read;
            const auto fields = split(std::string_view(line).substr(1), '|');
            if (fields.size() < 5) {
                diag.reject("malformed commit header: " + line);
                continue;
            }
            // author names may contain '|'; trailing fields are fixed
            const std::size_t last = fields.size() - 1;
            const std::string_view parents = fields[last];
            const std::string_view date = fields[last - 1];
            const std::string_view email = fields[last - 2];
            std::string name(fields[1]);
            for (std::size_t i = 2; i + 3 <= last; ++i) {
                name.push_back('|');
                name.append(fields[i]);
            }
            const auto ts = core::parse_instant(date);
            if (!ts) {
                diag.reject("unparseable commit date '" + std::string(date) + "' for " +
                            std::string(fields[0]));
                continue;
            }
            const auto ident = resolver.resolve(name, email);
            if (!ident.ok()) {
                diag.reject("commit " + std::string(fields[0]) + ": " + ident.error().message);
                continue;
            }
            if (!seen_hashes.insert(std::string(fields[0])).second) {
                diag.reject("duplicate commit hash " + std::string(fields[0]));
                continue;
            }
            int parent_count = 0;
            for (const auto& tok : split(parents, ' ')) {
                if (!tok.empty()) ++parent_count;
            }
            pending.valid = true;
            pending.record.component_id = component.component_id;
            pending.record.hash = std::string(fields[0]);
            pending.record.author_id = ident.value();
            pending.record.timestamp = *ts;
            pending.record.is_merge = parent_count >= 2;
            continue;
        }

        // numstat line: additions<TAB>deletions<TAB>path
        const auto fields = split(line, '\t');
        if (fields.size() != 3) {
            diag.warn("skipping malformed numstat line: " + line);
            continue;
        }
        if (!pending.valid) {
            diag.warn("numstat line before any commit header: " + line);
            continue;
        }
        std::int64_t additions = 0, deletions = 0;
        if (!parse_count(fields[0], additions) || !parse_count(fields[1], deletions)) {
            diag.warn("skipping malformed numstat counts: " + line);
            continue;
        }
        const std::string path = normalize_rename(fields[2]);
        if (core::any_glob_match(component.path_globs, path)) {
            pending.touched_component = true;
            pending.record.additions += additions;
            pending.record.deletions += deletions;
        }
    }
    flush();

    diag.unknown_identities = resolver.unknown_count() - unknown_before;
    return result;
}

}  // namespace ocam::ingest
