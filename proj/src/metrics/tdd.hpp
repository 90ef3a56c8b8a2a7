#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/records.hpp"
#include "core/result.hpp"
#include "core/time.hpp"

namespace ocam::metrics {

/// One weekly technical-debt-density observation; numerator and
/// denominator kept separate, the density is derived.
struct TddPoint {
    std::string component_id;
    core::WeekIndex week{1};
    core::MicroMinutes td_stock = 0;  // sum of open issues' remediation
    std::int64_t loc = 0;

    double td_minutes() const { return core::minutes_from_micro(td_stock); }
    double tdd() const { return td_minutes() / static_cast<double>(loc); }
};

struct TddSeriesResult {
    std::vector<TddPoint> points;
    std::vector<std::string> warnings;  // weeks dropped for missing sizes
};

/// TD stock per requested week, computed incrementally from issue
/// introduction/removal deltas. An issue counts toward week w when
/// week(introduced) <= w and (never removed or week(removed) > w).
core::Result<TddSeriesResult> tdd_series(
    const std::string& component_id, std::span<const core::TdIssueRecord> issues,
    const std::map<core::WeekIndex, std::int64_t>& sizes,
    const std::vector<core::WeekIndex>& weeks, const core::Date& epoch);

/// Definitional oracle: rescans every issue for every requested week.
core::Result<std::vector<core::MicroMinutes>> brute_force_td_stock(
    std::span<const core::TdIssueRecord> issues, const std::vector<core::WeekIndex>& weeks,
    const core::Date& epoch);

}  // namespace ocam::metrics
