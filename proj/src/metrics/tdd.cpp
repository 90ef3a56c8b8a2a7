#include "metrics/tdd.hpp"

#include <algorithm>

namespace ocam::metrics {

core::Result<TddSeriesResult> tdd_series(
    const std::string& component_id, std::span<const core::TdIssueRecord> issues,
    const std::map<core::WeekIndex, std::int64_t>& sizes,
    const std::vector<core::WeekIndex>& weeks, const core::Date& epoch) {
    using R = core::Result<TddSeriesResult>;

    // signed stock deltas keyed by week
    std::map<std::int64_t, core::MicroMinutes> deltas;
    for (const auto& issue : issues) {
        const auto intro = core::week_of(issue.introduced_at, epoch);
        if (!intro.ok()) {
            return R::failure(core::Errc::data_error,
                              "issue " + issue.issue_id + ": " + intro.error().message);
        }
        deltas[intro.value().value] += issue.remediation;
        if (issue.removed_at) {
            const auto removed = core::week_of(*issue.removed_at, epoch);
            if (!removed.ok()) {
                return R::failure(core::Errc::data_error,
                                  "issue " + issue.issue_id + ": " + removed.error().message);
            }
            deltas[removed.value().value] -= issue.remediation;
        }
    }

    std::vector<core::WeekIndex> sorted_weeks = weeks;
    std::sort(sorted_weeks.begin(), sorted_weeks.end());
    sorted_weeks.erase(std::unique(sorted_weeks.begin(), sorted_weeks.end()),
                       sorted_weeks.end());

    TddSeriesResult out;
    core::MicroMinutes stock = 0;
    auto delta_it = deltas.begin();
    for (const auto week : sorted_weeks) {
        while (delta_it != deltas.end() && delta_it->first <= week.value) {
            stock += delta_it->second;
            ++delta_it;
        }
        const auto size_it = sizes.find(week);
        if (size_it == sizes.end()) {
            out.warnings.push_back(component_id + ": no size snapshot for week " +
                                   std::to_string(week.value) + ", week dropped");
            continue;
        }
        if (size_it->second <= 0) {
            return R::failure(core::Errc::data_error,
                              component_id + ": non-positive size for week " +
                                  std::to_string(week.value));
        }
        TddPoint p;
        p.component_id = component_id;
        p.week = week;
        p.td_stock = stock;
        p.loc = size_it->second;
        out.points.push_back(p);
    }
    return out;
}

core::Result<std::vector<core::MicroMinutes>> brute_force_td_stock(
    std::span<const core::TdIssueRecord> issues, const std::vector<core::WeekIndex>& weeks,
    const core::Date& epoch) {
    using R = core::Result<std::vector<core::MicroMinutes>>;
    std::vector<core::MicroMinutes> out;
    out.reserve(weeks.size());
    for (const auto week : weeks) {
        core::MicroMinutes stock = 0;
        for (const auto& issue : issues) {
            const auto intro = core::week_of(issue.introduced_at, epoch);
            if (!intro.ok()) return R::failure(core::Errc::data_error, intro.error().message);
            if (intro.value() > week) continue;
            if (issue.removed_at) {
                const auto removed = core::week_of(*issue.removed_at, epoch);
                if (!removed.ok()) {
                    return R::failure(core::Errc::data_error, removed.error().message);
                }
                if (removed.value() <= week) continue;
            }
            stock += issue.remediation;
        }
        out.push_back(stock);
    }
    return out;
}

}  // namespace ocam::metrics
