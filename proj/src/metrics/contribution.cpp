#include "metrics/contribution.hpp"

#include <cassert>

namespace ocam::metrics {

namespace {

bool in_window(core::WeekIndex w, core::WeekIndex week, std::int64_t window_weeks) {
    return w.value > week.value - window_weeks && w.value <= week.value;
}

struct Tally {
    std::int64_t team = 0;
    std::int64_t all = 0;

    std::optional<double> percent() const {
        if (all == 0) return std::nullopt;
        return static_cast<double>(team) / static_cast<double>(all) * 100.0;
    }
};

}  // namespace

core::Result<std::set<core::WeekIndex>> active_weeks(
    std::span<const core::CommitRecord> commits, const core::Date& epoch,
    bool include_merges) {
    std::set<core::WeekIndex> weeks;
    for (const auto& c : commits) {
        if (c.is_merge && !include_merges) continue;
        const auto w = core::week_of(c.timestamp, epoch);
        if (!w.ok()) {
            return core::Result<std::set<core::WeekIndex>>::failure(
                core::Errc::data_error, "commit " + c.hash + ": " + w.error().message);
        }
        weeks.insert(w.value());
    }
    return weeks;
}

core::Result<ContributionBreakdown> contribution_breakdown(
    const std::string& component_id, core::WeekIndex week, const std::string& team_id,
    std::span<const core::CommitRecord> commits,
    std::span<const core::CreatedItemRecord> prs,
    std::span<const core::CreatedItemRecord> tickets,
    const core::AffiliationTimeline& affiliation, const core::Date& epoch,
    bool include_merges, std::int64_t window_weeks) {
    using R = core::Result<ContributionBreakdown>;

    Tally commit_tally, churn_tally, pr_tally, ticket_tally;

    for (const auto& c : commits) {
        if (c.is_merge && !include_merges) continue;
        const auto w = core::week_of(c.timestamp, epoch);
        if (!w.ok()) return R::failure(core::Errc::data_error, w.error().message);
        if (!in_window(w.value(), week, window_weeks)) continue;
        const bool ours = affiliation.team_of(c.author_id, c.timestamp) == team_id;
        commit_tally.all += 1;
        churn_tally.all += c.churn();
        if (ours) {
            commit_tally.team += 1;
            churn_tally.team += c.churn();
        }
    }
    for (const auto& p : prs) {
        const auto w = core::week_of(p.created_at, epoch);
        if (!w.ok()) return R::failure(core::Errc::data_error, w.error().message);
        if (!in_window(w.value(), week, window_weeks)) continue;
        pr_tally.all += 1;
        if (affiliation.team_of(p.creator_id, p.created_at) == team_id) pr_tally.team += 1;
    }
    for (const auto& t : tickets) {
        const auto w = core::week_of(t.created_at, epoch);
        if (!w.ok()) return R::failure(core::Errc::data_error, w.error().message);
        if (!in_window(w.value(), week, window_weeks)) continue;
        ticket_tally.all += 1;
        if (affiliation.team_of(t.creator_id, t.created_at) == team_id) ticket_tally.team += 1;
    }

    ContributionBreakdown out;
    out.component_id = component_id;
    out.week = week;
    out.team_id = team_id;
    out.commits_pct = commit_tally.percent();
    out.churn_pct = churn_tally.percent();
    out.prs_pct = pr_tally.percent();
    out.tickets_pct = ticket_tally.percent();

    const int present = out.measures_present();
    if (present == 0) {
        // an active week always has at least one commit, so this is a
        // caller error, not a data condition
        return R::failure(core::Errc::invalid_argument,
                          component_id + " week " + std::to_string(week.value) +
                              ": no events in window, week is not active");
    }
    double sum = 0.0;
    for (const auto& m : {out.commits_pct, out.churn_pct, out.prs_pct, out.tickets_pct}) {
        if (m) sum += *m;
    }
    out.degree = sum / present;
    return out;
}

std::set<std::string> teams_active_in_week(
    core::WeekIndex week, std::span<const core::CommitRecord> commits,
    std::span<const core::CreatedItemRecord> prs,
    std::span<const core::CreatedItemRecord> tickets,
    const core::AffiliationTimeline& affiliation, const core::Date& epoch,
    bool include_merges, std::int64_t window_weeks) {
    std::set<std::string> teams;
    auto add = [&](const std::string& person, core::Instant at) {
        const auto w = core::week_of(at, epoch);
        if (w.ok() && in_window(w.value(), week, window_weeks)) {
            teams.insert(std::string(affiliation.team_of(person, at)));
        }
    };
    for (const auto& c : commits) {
        if (c.is_merge && !include_merges) continue;
        add(c.author_id, c.timestamp);
    }
    for (const auto& p : prs) add(p.creator_id, p.created_at);
    for (const auto& t : tickets) add(t.creator_id, t.created_at);
    return teams;
}

}  // namespace ocam::metrics
