#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/result.hpp"
#include "core/time.hpp"

namespace ocam::core {

/// Remediation effort is held in micro-minutes so that technical-debt
/// stock arithmetic is exact integer arithmetic regardless of the order
/// issues are added or removed in.
using MicroMinutes = std::int64_t;
inline constexpr MicroMinutes kMicroPerMinute = 1'000'000;

inline double minutes_from_micro(MicroMinutes m) {
    return static_cast<double>(m) / static_cast<double>(kMicroPerMinute);
}

struct CommitRecord {
    std::string component_id;
    std::string hash;
    std::string author_id;  // canonical identity
    Instant timestamp;
    std::int64_t additions = 0;
    std::int64_t deletions = 0;
    bool is_merge = false;

    std::int64_t churn() const { return additions + deletions; }
};

/// Shared shape of pull-request and ticket creation events.
struct CreatedItemRecord {
    std::string component_id;
    std::string item_id;
    std::string creator_id;
    Instant created_at;
};

struct TdIssueRecord {
    std::string component_id;
    std::string issue_id;
    MicroMinutes remediation = 0;
    Instant introduced_at;
    std::optional<Instant> removed_at;  // absent = still open
};

struct SizeSnapshot {
    std::string component_id;
    WeekIndex week;
    std::int64_t loc = 0;
};

/// Component ownership over time: [start_day, end_day) per team.
struct OwnerPeriod {
    std::string team_id;
    std::int64_t start_day = 0;
    std::optional<std::int64_t> end_day;
};

struct SplitEvent {
    std::int64_t day = 0;
    std::string description;
};

struct ComponentSpec {
    std::string component_id;
    std::string repo_path;
    std::vector<std::string> path_globs;
    std::vector<OwnerPeriod> owner_timeline;
    std::vector<SplitEvent> split_events;

    /// Owning team on the given UTC day, if any.
    std::optional<std::string> owner_at(std::int64_t day) const {
        for (const auto& p : owner_timeline) {
            if (day >= p.start_day && (!p.end_day || day < *p.end_day)) return p.team_id;
        }
        return std::nullopt;
    }

    /// Owner timeline intervals must be ordered and non-overlapping.
    Result<bool> validate() const {
        for (std::size_t i = 0; i < owner_timeline.size(); ++i) {
            const auto& p = owner_timeline[i];
            if (p.end_day && *p.end_day <= p.start_day) {
                return Result<bool>::failure(Errc::data_error,
                                             component_id + ": owner period for " + p.team_id +
                                                 " has end before start");
            }
            if (i > 0) {
                const auto& prev = owner_timeline[i - 1];
                if (!prev.end_day || *prev.end_day > p.start_day) {
                    return Result<bool>::failure(
                        Errc::data_error,
                        component_id + ": overlapping or unordered owner periods");
                }
            }
        }
        return true;
    }
};

}  // namespace ocam::core
