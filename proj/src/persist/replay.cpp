#include "shelfrec/persist/replay.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shelfrec/core/errors.hpp"
#include "shelfrec/feedback/scoring.hpp"
#include "shelfrec/persist/event_log.hpp"

namespace shelfrec {

using nlohmann::json;

namespace {

[[noreturn]] void corrupt(const EventRecord& r, const std::string& why) {
  fail(ErrorCode::parse_error, "event " + std::to_string(r.sequence_number) + " (" +
                                   std::string(to_string(r.kind)) + "): " + why);
}

}  // namespace

void ReplayState::apply(const EventRecord& r) {
  if (r.sequence_number <= last_sequence) corrupt(r, "sequence number out of order");
  if (checked_out.contains(r.session_id)) corrupt(r, "session already checked out");
  auto [known, fresh] = sessions.try_emplace(r.session_id, r.user_id);
  if (!fresh && known->second != r.user_id) corrupt(r, "session changed user");
  (void)carts[r.session_id];

  auto settle = [&](const std::string& rec_id) {
    auto it = open_panels.find(rec_id);
    if (it == open_panels.end() || it->second.session != r.session_id)
      corrupt(r, "no open panel '" + rec_id + "'");
    settle_recommendation_panel(ratings, it->second.user, it->second.shown, it->second.purchased);
    open_panels.erase(it);
  };

  switch (r.kind) {
    case EventKind::position:
    case EventKind::pickup:
      break;
    case EventKind::purchase:
      apply_event(ratings, r.user_id, *r.item, PanelOutcome::info_buy);
      carts[r.session_id].push_back(*r.item);
      break;
    case EventKind::decline:
      apply_event(ratings, r.user_id, *r.item, PanelOutcome::info_decline);
      break;
    case EventKind::rec_shown:
      if (!open_panels.try_emplace(*r.rec_id, OpenPanel{r.session_id, r.user_id, r.items, {}}).second)
        corrupt(r, "panel id reused");
      break;
    case EventKind::rec_accepted: {
      auto it = open_panels.find(*r.rec_id);
      if (it == open_panels.end() || it->second.session != r.session_id)
        corrupt(r, "accepted item from a panel that is not open");
      auto& shown = it->second.shown;
      if (std::find(shown.begin(), shown.end(), *r.item) == shown.end())
        corrupt(r, "accepted item '" + r.item->str() + "' was never shown");
      it->second.purchased.push_back(*r.item);
      carts[r.session_id].push_back(*r.item);
      break;
    }
    case EventKind::rec_dismissed:
      settle(*r.rec_id);
      break;
    case EventKind::checkout: {
      std::vector<std::string> pending;
      for (const auto& [rec_id, panel] : open_panels)
        if (panel.session == r.session_id) pending.push_back(rec_id);
      for (const auto& rec_id : pending) settle(rec_id);
      checked_out.insert(r.session_id);
      break;
    }
  }
  last_sequence = r.sequence_number;
}

bool ReplayState::equivalent(const ReplayState& other) const {
  return ratings.same_contents(other.ratings) && sessions == other.sessions &&
         carts == other.carts && open_panels == other.open_panels &&
         checked_out == other.checked_out;
}

ReplayState replay(std::span<const EventRecord> records) {
  ReplayState state;
  for (const auto& r : records) state.apply(r);
  return state;
}

namespace {

json ids_json(const std::vector<ItemId>& ids) {
  json a = json::array();
  for (const auto& i : ids) a.push_back(i.str());
  return a;
}

std::vector<ItemId> ids_from(const json& a) {
  std::vector<ItemId> out;
  for (const auto& i : a) out.emplace_back(i.get<std::string>());
  return out;
}

}  // namespace

void write_snapshot(const ReplayState& state, const std::string& path) {
  json doc;
  doc["format"] = "shelfrec-snapshot";
  doc["version"] = 1;
  doc["last_sequence"] = state.last_sequence;
  const auto& m = state.ratings;
  json users = json::array(), items = json::array(), entries = json::array();
  for (RatingMatrix::Index u = 0; u < m.user_count(); ++u) {
    users.push_back(m.user_at(u).str());
    for (const auto& e : m.row(u)) entries.push_back(json::array({u, e.index, e.score}));
  }
  for (RatingMatrix::Index i = 0; i < m.item_count(); ++i) items.push_back(m.item_at(i).str());
  doc["users"] = std::move(users);
  doc["items"] = std::move(items);
  doc["entries"] = std::move(entries);
  json sessions = json::array();
  for (const auto& [sid, user] : state.sessions) {
    sessions.push_back({{"session", sid.str()},
                        {"user", user.str()},
                        {"cart", ids_json(state.carts.at(sid))},
                        {"checked_out", state.checked_out.contains(sid)}});
  }
  doc["sessions"] = std::move(sessions);
  json panels = json::array();
  for (const auto& [rec_id, p] : state.open_panels) {
    panels.push_back({{"rec_id", rec_id},
                      {"session", p.session.str()},
                      {"user", p.user.str()},
                      {"shown", ids_json(p.shown)},
                      {"purchased", ids_json(p.purchased)}});
  }
  doc["open_panels"] = std::move(panels);

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::storage, "cannot write snapshot '" + tmp + "'");
    out << doc.dump() << "\n";
    out.flush();
    if (!out) fail(ErrorCode::storage, "failed writing snapshot '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::storage, "cannot move snapshot into place: " + ec.message());
}

ReplayState read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::storage, "cannot open snapshot '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ReplayState state;
  try {
    const json doc = json::parse(buffer.str());
    if (doc.at("format") != "shelfrec-snapshot" || doc.at("version") != 1)
      fail(ErrorCode::parse_error, "unsupported snapshot format");
    state.last_sequence = doc.at("last_sequence").get<std::uint64_t>();
    std::vector<UserId> users;
    std::vector<ItemId> items;
    for (const auto& u : doc.at("users")) users.emplace_back(u.get<std::string>());
    for (const auto& i : doc.at("items")) items.emplace_back(i.get<std::string>());
    for (const auto& u : users) state.ratings.intern_user(u);
    for (const auto& i : items) state.ratings.intern_item(i);
    for (const auto& e : doc.at("entries")) {
      state.ratings.set(users.at(e.at(0).get<std::size_t>()), items.at(e.at(1).get<std::size_t>()),
                        e.at(2).get<double>());
    }
    for (const auto& s : doc.at("sessions")) {
      SessionId sid(s.at("session").get<std::string>());
      state.sessions.emplace(sid, UserId(s.at("user").get<std::string>()));
      state.carts[sid] = ids_from(s.at("cart"));
      if (s.at("checked_out").get<bool>()) state.checked_out.insert(sid);
    }
    for (const auto& p : doc.at("open_panels")) {
      state.open_panels.emplace(
          p.at("rec_id").get<std::string>(),
          ReplayState::OpenPanel{SessionId(p.at("session").get<std::string>()),
                                 UserId(p.at("user").get<std::string>()), ids_from(p.at("shown")),
                                 ids_from(p.at("purchased"))});
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed snapshot: ") + e.what());
  } catch (const std::out_of_range&) {
    fail(ErrorCode::parse_error, "snapshot entry references an unknown index");
  }
  return state;
}

ReplayState recover(const std::string& log_path, const std::optional<std::string>& snapshot_path) {
  ReplayState state;
  if (snapshot_path && std::filesystem::exists(*snapshot_path)) state = read_snapshot(*snapshot_path);
  if (!std::filesystem::exists(log_path)) return state;
  for (const auto& r : EventLog::read_all(log_path))
    if (r.sequence_number > state.last_sequence) state.apply(r);
  return state;
}

}  // namespace shelfrec
