#include "pipeline/analysis.hpp"

#include <algorithm>
#include <set>

namespace ocam::pipeline {

namespace {

std::vector<double> degrees_of(const Segment& s) {
    std::vector<double> out;
    out.reserve(s.observations.size());
    for (const auto& o : s.observations) out.push_back(o.contribution.degree);
    return out;
}

std::vector<double> tdds_of(const Segment& s) {
    std::vector<double> out;
    out.reserve(s.observations.size());
    for (const auto& o : s.observations) out.push_back(o.tdd.tdd());
    return out;
}

VariableAnalysis analyse_variable(const std::vector<double>& values, std::int64_t min_n) {
    VariableAnalysis out;
    const auto n = static_cast<std::int64_t>(values.size());
    if (n < min_n) {
        out.shapiro_note = "fewer than " + std::to_string(min_n) + " observations";
        return out;
    }
    if (auto d = stats::describe(values); d.ok()) out.descriptive = d.value();
    auto sw = stats::shapiro_wilk(values);
    if (sw.ok()) {
        out.shapiro = sw.value();
    } else {
        out.shapiro_note = sw.error().message;
    }
    return out;
}

SegmentAnalysis analyse_segment(const Segment& seg, const AnalysisConfig& config,
                                bool run_kendall, std::vector<std::string>& skip_reasons) {
    SegmentAnalysis out;
    out.label = seg.label;
    out.n = seg.n();

    const auto degree = degrees_of(seg);
    const auto tdd = tdds_of(seg);
    out.degree = analyse_variable(degree, config.min_n);
    out.tdd = analyse_variable(tdd, config.min_n);

    if (!run_kendall) return out;
    if (out.n < config.min_n) {
        out.skip_reason = "lack or limited number of observations (n=" +
                          std::to_string(out.n) + " < min_n=" +
                          std::to_string(config.min_n) + ")";
        skip_reasons.push_back(seg.label + ": " + *out.skip_reason);
        return out;
    }
    auto kendall = stats::kendall_tau_b(degree, tdd);
    if (!kendall.ok()) {
        out.skip_reason = kendall.error().message;
        skip_reasons.push_back(seg.label + ": " + *out.skip_reason);
        return out;
    }
    out.kendall = kendall.value();
    out.magnitude = stats::classify_magnitude(kendall.value().tau_b);
    return out;
}

}  // namespace

std::pair<Segment, Segment> segment_series(const metrics::WeeklySeries& series,
                                           core::WeekIndex split_week) {
    Segment before{"before", {}};
    Segment after{"after", {}};
    for (const auto& o : series.observations) {
        (o.week < split_week ? before : after).observations.push_back(o);
    }
    return {std::move(before), std::move(after)};
}

std::vector<Segment> split_at(const metrics::WeeklySeries& series,
                              const std::vector<core::WeekIndex>& split_weeks) {
    std::vector<core::WeekIndex> splits = split_weeks;
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

    std::vector<Segment> segments;
    if (splits.empty()) {
        segments.push_back(Segment{"full", series.observations});
        return segments;
    }
    if (splits.size() == 1) {
        auto [before, after] = segment_series(series, splits[0]);
        segments.push_back(std::move(before));
        segments.push_back(std::move(after));
        return segments;
    }
    segments.resize(splits.size() + 1);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        segments[i].label = "seg" + std::to_string(i + 1);
    }
    for (const auto& o : series.observations) {
        const std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(splits.begin(), splits.end(), o.week) - splits.begin());
        segments[idx].observations.push_back(o);
    }
    return segments;
}

core::Result<SegmentedAnalysis> run_analysis(const metrics::WeeklySeries& series,
                                             const core::ComponentSpec& component,
                                             const AnalysisConfig& config) {
    using R = core::Result<SegmentedAnalysis>;
    if (series.observations.empty()) {
        return R::failure(core::Errc::invalid_argument,
                          component.component_id + ": empty series");
    }

    SegmentedAnalysis out;
    out.component_id = component.component_id;

    std::vector<core::WeekIndex> split_weeks;
    if (!config.no_segmentation) {
        for (const auto& ev : component.split_events) {
            const core::Instant at{ev.day * 86400};
            const auto w = core::week_of(at, config.epoch);
            if (w.ok()) {
                split_weeks.push_back(w.value());
            } else if (at.utc_day() < core::day_number(config.epoch)) {
                // split predates the observation window: everything is "after"
                split_weeks.push_back(core::WeekIndex{1});
            } else {
                return R::failure(core::Errc::data_error, component.component_id +
                                                              ": split event: " +
                                                              w.error().message);
            }
        }
        std::sort(split_weeks.begin(), split_weeks.end());
        split_weeks.erase(std::unique(split_weeks.begin(), split_weeks.end()),
                          split_weeks.end());
    }

    if (split_weeks.empty()) {
        Segment full{"full", series.observations};
        out.segments.push_back(analyse_segment(full, config, true, out.skip_reasons));
        out.segmentation_applied = false;
        return out;
    }

    auto segments = split_at(series, split_weeks);

    // split-confound test per boundary
    bool any_significant = false;
    bool any_boundary_untestable = false;
    for (std::size_t b = 0; b < split_weeks.size(); ++b) {
        const Segment& left = segments[b];
        const Segment& right = segments[b + 1];
        BoundaryAnalysis boundary;
        boundary.split_week = split_weeks[b];
        boundary.n_total = left.n() + right.n();
        if (left.n() < config.min_n || right.n() < config.min_n) {
            const std::string reason =
                "no statistical test due to lack or limited number of observations (n=" +
                std::to_string(left.n()) + "/" + std::to_string(right.n()) + ")";
            boundary.degree.skip_reason = reason;
            boundary.tdd.skip_reason = reason;
            out.skip_reasons.push_back("split at week " +
                                       std::to_string(split_weeks[b].value) + ": " + reason);
            any_boundary_untestable = true;
        } else {
            auto mwu_degree = stats::mann_whitney_u(degrees_of(left), degrees_of(right));
            auto mwu_tdd = stats::mann_whitney_u(tdds_of(left), tdds_of(right));
            if (!mwu_degree.ok() || !mwu_tdd.ok()) {
                return R::failure(core::Errc::data_error,
                                  component.component_id + ": split-confound test failed");
            }
            boundary.degree.result = mwu_degree.value();
            boundary.tdd.result = mwu_tdd.value();
            any_significant = any_significant ||
                              mwu_degree.value().p_value < config.alpha ||
                              mwu_tdd.value().p_value < config.alpha;
        }
        out.boundaries.push_back(std::move(boundary));
    }

    // Segments are analysed separately when the split demonstrably (or
    // presumably, for untestable boundaries) shifts the distributions.
    out.segmentation_applied =
        config.force_segmentation || any_significant || any_boundary_untestable;

    if (out.segmentation_applied) {
        for (const auto& seg : segments) {
            out.segments.push_back(analyse_segment(seg, config, true, out.skip_reasons));
        }
    } else {
        Segment full{"full", series.observations};
        out.segments.push_back(analyse_segment(full, config, true, out.skip_reasons));
    }
    return out;
}

}  // namespace ocam::pipeline
