#include "reco/core/log_state.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "reco/common/error.hpp"

namespace reco {

std::string_view to_string(EventType t) {
    switch (t) {
        case EventType::impression: return "impression";
        case EventType::click: return "click";
        case EventType::like: return "like";
        case EventType::share: return "share";
        case EventType::follow: return "follow";
        case EventType::comment: return "comment";
        case EventType::external_visit: return "external_visit";
    }
    return "?";
}

std::optional<EventType> event_type_from_string(std::string_view s) {
    static const std::pair<std::string_view, EventType> table[] = {
        {"impression", EventType::impression}, {"click", EventType::click},
        {"like", EventType::like},             {"share", EventType::share},
        {"follow", EventType::follow},         {"comment", EventType::comment},
        {"external_visit", EventType::external_visit},
    };
    for (const auto& [name, t] : table)
        if (name == s) return t;
    return std::nullopt;
}

std::string_view to_string(GroupTag g) {
    switch (g) {
        case GroupTag::new_user: return "new";
        case GroupTag::inactive: return "inactive";
        case GroupTag::active: return "active";
    }
    return "?";
}

SmoothedRates engagement_rates(const EngagementStats& s, double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw ConfigError("smoothing parameters must be positive");
    const auto rate = [&](std::int64_t count, std::int64_t base) {
        return (double(count) + a) / (double(base) + a + b);
    };
    SmoothedRates r;
    r.click_per_impression = rate(s.clicks, s.impressions);
    r.like_per_impression = rate(s.likes, s.impressions);
    r.share_per_impression = rate(s.shares, s.impressions);
    r.follow_per_impression = rate(s.follows, s.impressions);
    r.comment_per_impression = rate(s.comments, s.impressions);
    r.like_per_click = rate(s.likes, s.clicks);
    r.share_per_click = rate(s.shares, s.clicks);
    r.follow_per_click = rate(s.follows, s.clicks);
    r.comment_per_click = rate(s.comments, s.clicks);
    return r;
}

void LogState::register_user(UserId id, Day signup_day, int demographic_group) {
    auto [it, inserted] = users_.try_emplace(id);
    if (!inserted) return;
    it->second.user_id = id;
    it->second.signup_day = signup_day;
    it->second.demographic_group = demographic_group;
}

void LogState::register_item(const Item& item) { items_.try_emplace(item.item_id, item); }

void LogState::set_item_cluster(ItemId id, int cluster_id) {
    auto it = items_.find(id);
    if (it == items_.end()) throw InvariantViolation("set_item_cluster: unknown item");
    it->second.cluster_id = cluster_id;
}

void LogState::set_item_low_quality(ItemId id, bool flag) {
    auto it = items_.find(id);
    if (it == items_.end()) throw InvariantViolation("set_item_low_quality: unknown item");
    it->second.is_low_quality = flag;
}

void LogState::set_group_tag(UserId id, GroupTag tag) { user_mut(id).group_tag = tag; }

std::uint64_t LogState::impression_key(UserId u, ItemId i, Day d) {
    // 24 bits user, 28 bits item, 12 bits day: plenty at desk scale.
    return (std::uint64_t(u) << 40) | (std::uint64_t(i & 0x0fffffffu) << 12) | std::uint64_t(d & 0xfff);
}

UserProfile& LogState::user_mut(UserId id) {
    auto it = users_.find(id);
    if (it == users_.end()) throw InvariantViolation("unknown user id " + std::to_string(id));
    return it->second;
}

void LogState::ingest_event(const InteractionEvent& e) {
    auto uit = users_.find(e.user_id);
    if (uit == users_.end()) throw InvariantViolation("ingest_event: unknown user " + std::to_string(e.user_id));
    auto iit = items_.find(e.item_id);
    if (iit == items_.end()) throw InvariantViolation("ingest_event: unknown item " + std::to_string(e.item_id));
    if ((e.position >= 0) != (e.type == EventType::impression))
        throw InvariantViolation("ingest_event: position present iff impression");

    const std::uint64_t slot = (std::uint64_t(std::uint32_t(e.day)) << 32) | e.seq;
    const std::uint64_t payload =
        (std::uint64_t(e.user_id) << 32) ^ (std::uint64_t(e.item_id) << 3) ^ std::uint64_t(e.type);
    auto [dit, fresh] = dedupe_.try_emplace(slot, payload);
    if (!fresh) {
        if (dit->second == payload) return; // exact duplicate: no-op
        throw InvariantViolation("ingest_event: conflicting events share (day,seq)");
    }

    UserProfile& user = uit->second;
    Item& item = iit->second;

    if (is_engagement(e.type) && e.type != EventType::click) {
        // engagements besides click also require the impression
    }
    if (is_engagement(e.type)) {
        if (impressions_.count(impression_key(e.user_id, e.item_id, e.day)) == 0) {
            dedupe_.erase(slot);
            throw InvariantViolation("ingest_event: engagement without prior impression (user " +
                                     std::to_string(e.user_id) + ", item " + std::to_string(e.item_id) + ")");
        }
    }

    events_.push_back(e);
    item_stats_[e.item_id].add(e.type);
    group_item_stats_[(std::uint64_t(std::uint32_t(user.demographic_group)) << 32) | e.item_id].add(e.type);
    seen_.insert((std::uint64_t(e.user_id) << 32) | e.item_id);

    const std::uint64_t ua_key = (std::uint64_t(e.user_id) << 32) | item.author_id;
    switch (e.type) {
        case EventType::impression: {
            impressions_.insert(impression_key(e.user_id, e.item_id, e.day));
            auto& days = active_days_[e.user_id];
            if (days.empty() || days.back() != e.day) days.push_back(e.day);
            user_author_[ua_key].second += 1;
            auto& aus = user_authors_[e.user_id];
            auto pos = std::lower_bound(aus.begin(), aus.end(), item.author_id);
            if (pos == aus.end() || *pos != item.author_id) aus.insert(pos, item.author_id);
            break;
        }
        case EventType::click:
            user_author_[ua_key].first += 1;
            [[fallthrough]];
        case EventType::like:
        case EventType::share:
        case EventType::comment:
            user.last_n.push_back({e.item_id, e.type, e.day});
            while (int(user.last_n.size()) > last_n_cap_) user.last_n.pop_front();
            break;
        case EventType::follow: {
            auto pos = std::lower_bound(user.followed_authors.begin(), user.followed_authors.end(),
                                        item.author_id);
            if (pos == user.followed_authors.end() || *pos != item.author_id)
                user.followed_authors.insert(pos, item.author_id);
            user.last_n.push_back({e.item_id, e.type, e.day});
            while (int(user.last_n.size()) > last_n_cap_) user.last_n.pop_front();
            break;
        }
        case EventType::external_visit:
            external_today_[e.user_id] += 1;
            break;
    }
}

void LogState::close_day(Day /*day*/, double kol_decay, double kol_scale) {
    std::vector<UserId> ids = user_ids_sorted();
    for (UserId id : ids) {
        UserProfile& u = users_.at(id);
        const auto it = external_today_.find(id);
        const double x = it == external_today_.end() ? 0.0 : double(it->second) / kol_scale;
        if (u.kol_seen) {
            u.kol_score = kol_decay * u.kol_score + (1.0 - kol_decay) * x;
        } else if (x > 0.0) {
            u.kol_score = x;
            u.kol_seen = true;
        }
    }
    external_today_.clear();
}

const UserProfile& LogState::user(UserId id) const {
    auto it = users_.find(id);
    if (it == users_.end()) throw InvariantViolation("unknown user id " + std::to_string(id));
    return it->second;
}

const Item& LogState::item(ItemId id) const {
    auto it = items_.find(id);
    if (it == items_.end()) throw InvariantViolation("unknown item id " + std::to_string(id));
    return it->second;
}

const EngagementStats& LogState::item_stats(ItemId id) const {
    static const EngagementStats zero;
    auto it = item_stats_.find(id);
    return it == item_stats_.end() ? zero : it->second;
}

const EngagementStats* LogState::group_item_stats(int group, ItemId id) const {
    auto it = group_item_stats_.find((std::uint64_t(std::uint32_t(group)) << 32) | id);
    return it == group_item_stats_.end() ? nullptr : &it->second;
}

std::vector<UserId> LogState::user_ids_sorted() const {
    std::vector<UserId> ids;
    ids.reserve(users_.size());
    for (const auto& [id, _] : users_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<ItemId> LogState::item_ids_sorted() const {
    std::vector<ItemId> ids;
    ids.reserve(items_.size());
    for (const auto& [id, _] : items_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool LogState::active_on(UserId id, Day day) const {
    auto it = active_days_.find(id);
    if (it == active_days_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), day);
}

int LogState::active_days_in(UserId id, Day first, Day last) const {
    auto it = active_days_.find(id);
    if (it == active_days_.end() || first > last) return 0;
    const auto& days = it->second;
    const auto lo = std::lower_bound(days.begin(), days.end(), first);
    const auto hi = std::upper_bound(days.begin(), days.end(), last);
    return int(hi - lo);
}

bool LogState::seen(UserId user, ItemId item) const {
    return seen_.count((std::uint64_t(user) << 32) | item) != 0;
}

std::pair<int, int> LogState::user_author_counts(UserId user, AuthorId author) const {
    auto it = user_author_.find((std::uint64_t(user) << 32) | author);
    return it == user_author_.end() ? std::pair<int, int>{0, 0} : it->second;
}

std::vector<AuthorId> LogState::authors_interacted(UserId user) const {
    auto it = user_authors_.find(user);
    return it == user_authors_.end() ? std::vector<AuthorId>{} : it->second;
}

std::int64_t LogState::external_visits_today(UserId id) const {
    auto it = external_today_.find(id);
    return it == external_today_.end() ? 0 : it->second;
}

// --- JSONL ------------------------------------------------------------------

std::string event_to_jsonl(const InteractionEvent& e) {
    nlohmann::ordered_json j;
    j["day"] = e.day;
    j["seq"] = e.seq;
    j["user_id"] = e.user_id;
    j["item_id"] = e.item_id;
    j["event_type"] = std::string(to_string(e.type));
    if (e.type == EventType::impression) j["position"] = e.position;
    if (e.channel_id >= 0) j["channel_id"] = e.channel_id;
    j["arm_id"] = e.arm_id;
    return j.dump();
}

InteractionEvent event_from_jsonl(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    InteractionEvent e;
    e.day = j.at("day").get<Day>();
    e.seq = j.at("seq").get<std::uint32_t>();
    e.user_id = j.at("user_id").get<UserId>();
    e.item_id = j.at("item_id").get<ItemId>();
    const auto type = event_type_from_string(j.at("event_type").get<std::string>());
    if (!type) throw InvariantViolation("bad event_type in log line: " + line);
    e.type = *type;
    e.position = j.value("position", -1);
    e.channel_id = j.value("channel_id", -1);
    e.arm_id = j.value("arm_id", 0);
    return e;
}

void append_events_jsonl(const std::string& path, std::span<const InteractionEvent> events) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ConfigError("cannot open log file for append: " + path);
    for (const auto& e : events) out << event_to_jsonl(e) << '\n';
}

std::vector<InteractionEvent> read_events_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open log file: " + path);
    std::vector<InteractionEvent> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(event_from_jsonl(line));
    }
    return out;
}

} // namespace reco
