#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core/result.hpp"
#include "core/time.hpp"

namespace ocam::core {

inline constexpr std::string_view kUnaffiliated = "unaffiliated";

/// One person, as reconstructed from raw commit/PR/ticket author fields.
struct Identity {
    std::string canonical_id;
    std::set<std::string> raw_names;
    std::set<std::string> raw_emails;
};

/// raw email -> canonical_id table (aliases.json).
using AliasMap = std::unordered_map<std::string, std::string>;

/// Resolves raw (name, email) pairs to canonical identities and keeps
/// the accumulated Identity records for diagnostics. Unknown emails
/// fall back to the lowercased email and are counted as warnings.
class IdentityResolver {
public:
    IdentityResolver() = default;
    explicit IdentityResolver(AliasMap aliases) : aliases_(std::move(aliases)) {}

    /// Empty name and email is a rejected record.
    Result<std::string> resolve(std::string_view raw_name, std::string_view raw_email);

    const std::map<std::string, Identity>& identities() const { return identities_; }
    std::int64_t unknown_count() const { return unknown_count_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    AliasMap aliases_;
    std::map<std::string, Identity> identities_;
    std::set<std::string> warned_emails_;
    std::int64_t unknown_count_ = 0;
    std::vector<std::string> warnings_;
};

/// Membership interval: [start_day, end_day), end absent = still open.
struct Membership {
    std::string canonical_id;
    std::string team_id;
    std::int64_t start_day = 0;
    std::optional<std::int64_t> end_day;
};

/// Person -> team over time. Intervals per person must not overlap;
/// violations are reported at construction, not at query time.
class AffiliationTimeline {
public:
    static Result<AffiliationTimeline> create(std::vector<Membership> memberships);

    /// Team containing `at`, else "unaffiliated".
    std::string_view team_of(const std::string& canonical_id, Instant at) const;

    const std::vector<Membership>& memberships() const { return all_; }

private:
    struct Interval {
        std::int64_t start;
        std::optional<std::int64_t> end;
        std::string team_id;
    };
    std::vector<Membership> all_;
    std::unordered_map<std::string, std::vector<Interval>> by_person_;
};

}  // namespace ocam::core
