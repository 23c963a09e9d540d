#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "reco/core/types.hpp"

namespace reco {

// Ground-truth event log plus the profile/stats projections every other
// module reads. Single writer; readers take snapshots between days.
class LogState {
public:
    explicit LogState(int last_n_cap = 50) : last_n_cap_(last_n_cap) {}

    // Roster registration. The simulator (or a log loader) declares users and
    // items before events referencing them are ingested.
    void register_user(UserId id, Day signup_day, int demographic_group);
    void register_item(const Item& item);
    void set_item_cluster(ItemId id, int cluster_id);
    void set_item_low_quality(ItemId id, bool flag);
    void set_group_tag(UserId id, GroupTag tag);

    // Appends one event and updates every projection. Idempotent on exact
    // duplicates of (day, seq, user, item, type); throws InvariantViolation
    // on engagements without a prior impression or unknown ids.
    void ingest_event(const InteractionEvent& event);

    // Day-close bookkeeping: KOL score EMA from the day's external visits.
    void close_day(Day day, double kol_decay, double kol_scale);

    // --- queries -----------------------------------------------------------
    bool has_user(UserId id) const { return users_.count(id) != 0; }
    bool has_item(ItemId id) const { return items_.count(id) != 0; }
    const UserProfile& user(UserId id) const;
    const Item& item(ItemId id) const;
    const EngagementStats& item_stats(ItemId id) const;
    // Stats restricted to events from one demographic group; null if none.
    const EngagementStats* group_item_stats(int group, ItemId id) const;

    std::size_t user_count() const { return users_.size(); }
    std::size_t item_count() const { return items_.size(); }
    std::vector<UserId> user_ids_sorted() const;
    std::vector<ItemId> item_ids_sorted() const;

    const std::vector<InteractionEvent>& events() const { return events_; }

    bool active_on(UserId id, Day day) const;
    int active_days_in(UserId id, Day first, Day last) const; // inclusive range
    bool seen(UserId user, ItemId item) const;                // any event incl. impression

    // (clicks, impressions) of `user` on `author`'s items.
    std::pair<int, int> user_author_counts(UserId user, AuthorId author) const;
    std::vector<AuthorId> authors_interacted(UserId user) const;

    std::int64_t external_visits_today(UserId id) const;

private:
    static std::uint64_t impression_key(UserId u, ItemId i, Day d);
    UserProfile& user_mut(UserId id);

    int last_n_cap_;
    std::vector<InteractionEvent> events_;
    std::unordered_map<UserId, UserProfile> users_;
    std::unordered_map<ItemId, Item> items_;
    std::unordered_map<ItemId, EngagementStats> item_stats_;
    std::unordered_map<std::uint64_t, EngagementStats> group_item_stats_; // group<<32 | item
    std::unordered_map<std::uint64_t, std::uint64_t> dedupe_;            // (day,seq) -> payload
    std::unordered_set<std::uint64_t> impressions_;                      // (user,item,day)
    std::unordered_set<std::uint64_t> seen_;                             // user<<32 | item
    std::unordered_map<UserId, std::vector<Day>> active_days_;
    std::unordered_map<std::uint64_t, std::pair<int, int>> user_author_; // clicks, impressions
    std::unordered_map<UserId, std::vector<AuthorId>> user_authors_;     // sorted unique
    std::unordered_map<UserId, std::int64_t> external_today_;
};

// Line-delimited JSON, one event per line. Field names are part of the
// external contract: day, seq, user_id, item_id, event_type, position,
// channel_id, arm_id (position/channel_id omitted when absent).
std::string event_to_jsonl(const InteractionEvent& e);
InteractionEvent event_from_jsonl(const std::string& line);
void append_events_jsonl(const std::string& path, std::span<const InteractionEvent> events);
std::vector<InteractionEvent> read_events_jsonl(const std::string& path);

} // namespace reco
