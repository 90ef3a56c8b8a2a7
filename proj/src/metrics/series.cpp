#include "metrics/series.hpp"

#include <map>

namespace ocam::metrics {

core::Result<SeriesBuildResult> build_weekly_series(
    const core::ComponentSpec& component, std::span<const core::CommitRecord> commits,
    std::span<const core::CreatedItemRecord> prs,
    std::span<const core::CreatedItemRecord> tickets,
    std::span<const core::TdIssueRecord> td_issues,
    std::span<const core::SizeSnapshot> sizes, const core::AffiliationTimeline& affiliation,
    const SeriesOptions& options) {
    using R = core::Result<SeriesBuildResult>;

    const auto weeks = active_weeks(commits, options.epoch, options.include_merges);
    if (!weeks.ok()) return R::failure(weeks.error().code, weeks.error().message);

    std::map<core::WeekIndex, std::int64_t> size_by_week;
    for (const auto& s : sizes) {
        if (s.component_id == component.component_id) size_by_week[s.week] = s.loc;
    }

    SeriesBuildResult out;
    out.series.component_id = component.component_id;

    const std::vector<core::WeekIndex> week_list(weeks.value().begin(), weeks.value().end());
    const auto tdd = tdd_series(component.component_id, td_issues, size_by_week, week_list,
                                options.epoch);
    if (!tdd.ok()) return R::failure(tdd.error().code, tdd.error().message);
    out.warnings = tdd.value().warnings;

    std::map<core::WeekIndex, TddPoint> tdd_by_week;
    for (const auto& p : tdd.value().points) tdd_by_week[p.week] = p;

    for (const auto week : week_list) {
        const auto tdd_it = tdd_by_week.find(week);
        if (tdd_it == tdd_by_week.end()) continue;  // already warned by tdd_series

        const core::Instant start = core::week_start(week, options.epoch);
        const auto owner = component.owner_at(start.utc_day());
        if (!owner) {
            out.warnings.push_back(component.component_id + ": no owning team at week " +
                                   std::to_string(week.value) + ", week dropped");
            continue;
        }
        auto breakdown = contribution_breakdown(
            component.component_id, week, *owner, commits, prs, tickets, affiliation,
            options.epoch, options.include_merges, options.window_weeks);
        if (!breakdown.ok()) {
            return R::failure(breakdown.error().code, breakdown.error().message);
        }
        if (options.require_all_measures && breakdown.value().measures_present() < 4) {
            out.warnings.push_back(component.component_id + ": week " +
                                   std::to_string(week.value) +
                                   " lacks one or more measures, dropped (strict measures)");
            continue;
        }
        Observation obs;
        obs.week = week;
        obs.contribution = std::move(breakdown).value();
        obs.tdd = tdd_it->second;
        out.series.observations.push_back(std::move(obs));
    }
    return out;
}

}  // namespace ocam::metrics
