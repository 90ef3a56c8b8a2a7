#include "core/identity.hpp"

#include <algorithm>
#include <cctype>

namespace ocam::core {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

Result<std::string> IdentityResolver::resolve(std::string_view raw_name,
                                              std::string_view raw_email) {
    if (raw_name.empty() && raw_email.empty()) {
        return Result<std::string>::failure(Errc::data_error,
                                            "record has neither author name nor email");
    }
    const std::string email = lowercase(raw_email);
    std::string canonical;
    if (auto it = aliases_.find(email); it != aliases_.end()) {
        canonical = it->second;
    } else if (!email.empty()) {
        canonical = email;
        ++unknown_count_;
        if (warned_emails_.insert(email).second) {
            warnings_.push_back("unknown identity, using email as canonical id: " + email);
        }
    } else {
        canonical = lowercase(raw_name);
        ++unknown_count_;
        if (warned_emails_.insert(canonical).second) {
            warnings_.push_back("identity with no email, using name as canonical id: " +
                                canonical);
        }
    }
    Identity& ident = identities_[canonical];
    ident.canonical_id = canonical;
    if (!raw_name.empty()) ident.raw_names.insert(std::string(raw_name));
    if (!raw_email.empty()) ident.raw_emails.insert(std::string(raw_email));
    return canonical;
}

Result<AffiliationTimeline> AffiliationTimeline::create(std::vector<Membership> memberships) {
    AffiliationTimeline t;
    for (const auto& m : memberships) {
        if (m.end_day && *m.end_day <= m.start_day) {
            return Result<AffiliationTimeline>::failure(
                Errc::data_error, "membership for " + m.canonical_id + " in " + m.team_id +
                                      " has end before start");
        }
        t.by_person_[m.canonical_id].push_back(Interval{m.start_day, m.end_day, m.team_id});
    }
    for (auto& [person, ivals] : t.by_person_) {
        std::sort(ivals.begin(), ivals.end(),
                  [](const Interval& a, const Interval& b) { return a.start < b.start; });
        for (std::size_t i = 1; i < ivals.size(); ++i) {
            const auto& prev = ivals[i - 1];
            if (!prev.end || *prev.end > ivals[i].start) {
                return Result<AffiliationTimeline>::failure(
                    Errc::data_error,
                    "overlapping team memberships for " + person + " (" + prev.team_id +
                        " / " + ivals[i].team_id + ")");
            }
        }
    }
    t.all_ = std::move(memberships);
    return t;
}

std::string_view AffiliationTimeline::team_of(const std::string& canonical_id,
                                              Instant at) const {
    const auto it = by_person_.find(canonical_id);
    if (it == by_person_.end()) return kUnaffiliated;
    const std::int64_t day = at.utc_day();
    // intervals are sorted and disjoint; find the last one starting at or before `day`
    const auto& ivals = it->second;
    auto pos = std::upper_bound(ivals.begin(), ivals.end(), day,
                                [](std::int64_t d, const Interval& iv) { return d < iv.start; });
    if (pos == ivals.begin()) return kUnaffiliated;
    --pos;
    if (!pos->end || day < *pos->end) return pos->team_id;
    return kUnaffiliated;
}

}  // namespace ocam::core
