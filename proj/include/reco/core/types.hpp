#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reco {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;
using AuthorId = std::uint32_t;
using Day = std::int32_t;

enum class EventType : std::uint8_t {
    impression,
    click,
    like,
    share,
    follow,
    comment,
    external_visit,
};

constexpr bool is_engagement(EventType t) {
    return t == EventType::click || t == EventType::like || t == EventType::share ||
           t == EventType::follow || t == EventType::comment;
}

std::string_view to_string(EventType t);
std::optional<EventType> event_type_from_string(std::string_view s);

// One timestamped user action; the system's sole ground-truth record.
// Time is (day, within-day seq); there is no wall clock.
struct InteractionEvent {
    Day day = 0;
    std::uint32_t seq = 0;
    UserId user_id = 0;
    ItemId item_id = 0;
    EventType type = EventType::impression;
    std::int32_t position = -1;   // 0-based slate index, present iff impression
    std::int32_t channel_id = -1; // originating retrieval channel, -1 = absent
    std::int32_t arm_id = 0;

    bool operator==(const InteractionEvent&) const = default;
};

struct EngagementStats {
    std::int64_t impressions = 0;
    std::int64_t clicks = 0;
    std::int64_t likes = 0;
    std::int64_t shares = 0;
    std::int64_t follows = 0;
    std::int64_t comments = 0;

    void add(EventType t) {
        switch (t) {
            case EventType::impression: ++impressions; break;
            case EventType::click: ++clicks; break;
            case EventType::like: ++likes; break;
            case EventType::share: ++shares; break;
            case EventType::follow: ++follows; break;
            case EventType::comment: ++comments; break;
            case EventType::external_visit: break; // external traffic, not an item counter
        }
    }

    std::int64_t count(EventType t) const {
        switch (t) {
            case EventType::impression: return impressions;
            case EventType::click: return clicks;
            case EventType::like: return likes;
            case EventType::share: return shares;
            case EventType::follow: return follows;
            case EventType::comment: return comments;
            case EventType::external_visit: return 0;
        }
        return 0;
    }

    bool operator==(const EngagementStats&) const = default;
};

// Laplace-smoothed rates: (count + a) / (base + a + b). Always inside (0,1).
struct SmoothedRates {
    double click_per_impression = 0;
    double like_per_impression = 0;
    double share_per_impression = 0;
    double follow_per_impression = 0;
    double comment_per_impression = 0;
    double like_per_click = 0;
    double share_per_click = 0;
    double follow_per_click = 0;
    double comment_per_click = 0;
};

SmoothedRates engagement_rates(const EngagementStats& stats, double a = 1.0, double b = 1.0);

enum class GroupTag : std::uint8_t { new_user, inactive, active };

std::string_view to_string(GroupTag g);

struct LastNEntry {
    ItemId item_id = 0;
    EventType type = EventType::click;
    Day day = 0;

    bool operator==(const LastNEntry&) const = default;
};

struct UserProfile {
    UserId user_id = 0;
    Day signup_day = 0;
    int demographic_group = 0;
    GroupTag group_tag = GroupTag::new_user;
    double kol_score = 0.0;
    bool kol_seen = false;                  // EMA initializes at the first observation
    std::vector<AuthorId> followed_authors; // sorted, unique
    std::deque<LastNEntry> last_n;          // newest at the back, bounded

    int follow_count() const { return int(followed_authors.size()); }

    bool follows(AuthorId a) const {
        return std::binary_search(followed_authors.begin(), followed_authors.end(), a);
    }
};

struct Item {
    ItemId item_id = 0;
    AuthorId author_id = 0;
    Day publish_day = 0;
    int taxonomy = 0;
    int cluster_id = 0;
    bool is_low_quality = false;
};

struct ItemPool {
    std::string pool_id;
    std::vector<ItemId> members; // sorted ascending

    bool contains(ItemId id) const { return std::binary_search(members.begin(), members.end(), id); }
};

} // namespace reco
