#include "shelfrec/service/shop_service.hpp"

#include <charconv>
#include <filesystem>

#include "shelfrec/recommend/icf_str.hpp"
#include "shelfrec/session/flow.hpp"

namespace shelfrec {

using nlohmann::json;

ApiError to_api_error(const Error& error) {
  switch (error.code()) {
    case ErrorCode::invalid_argument: return {"invalid_argument", error.what(), 400};
    case ErrorCode::parse_error: return {"malformed_body", error.what(), 400};
    case ErrorCode::not_found: return {"not_found", error.what(), 404};
    case ErrorCode::conflict: return {"conflict", error.what(), 409};
    case ErrorCode::storage: return {"storage_failure", error.what(), 500};
  }
  return {"internal", error.what(), 500};
}

namespace {

ApiResponse error_response(const ApiError& e) {
  return {e.http_status, {{"error", {{"code", e.code}, {"message", e.message}}}}};
}

template <typename F>
ApiResponse guarded(F&& handler) {
  try {
    return handler();
  } catch (const Error& e) {
    return error_response(to_api_error(e));
  } catch (const json::exception& e) {
    return error_response({"malformed_body", e.what(), 400});
  } catch (const std::exception& e) {
    return error_response({"internal", e.what(), 500});
  }
}

const json& require_object(const json& body) {
  if (!body.is_object()) fail(ErrorCode::invalid_argument, "request body must be a JSON object");
  return body;
}

const json& require_field(const json& body, const char* key) {
  auto it = require_object(body).find(key);
  if (it == body.end()) fail(ErrorCode::invalid_argument, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& body, const char* key) {
  const json& v = require_field(body, key);
  if (!v.is_string() || v.get_ref<const std::string&>().empty())
    fail(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a non-empty string");
  return v.get<std::string>();
}

double require_number(const json& body, const char* key) {
  const json& v = require_field(body, key);
  if (!v.is_number()) fail(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(ErrorCode::invalid_argument, std::string("field '") + key + "' must be finite");
  return d;
}

bool require_bool(const json& body, const char* key) {
  const json& v = require_field(body, key);
  if (!v.is_boolean()) fail(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

json optional_id(const std::optional<ShelfId>& id) {
  return id ? json(id->str()) : json(nullptr);
}

json ids_json(const std::vector<ItemId>& ids) {
  json a = json::array();
  for (const auto& id : ids) a.push_back(id.str());
  return a;
}

json delta_json(const AppliedDelta& d) {
  return {{"item_id", d.item.str()},
          {"outcome", std::string(to_string(d.outcome))},
          {"delta", d.delta},
          {"score", d.score_after}};
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t session_number(const std::string& id) {
  if (id.size() < 2 || id[0] != 's') return 0;
  std::uint64_t n = 0;
  auto r = std::from_chars(id.data() + 1, id.data() + id.size(), n);
  return (r.ec == std::errc() && r.ptr == id.data() + id.size()) ? n : 0;
}

}  // namespace

ShopService::ShopService(ServiceConfig config, StoreLayout layout)
    : config_(std::move(config)), layout_(std::move(layout)) {
  config_.validate();
  if (auto violations = validate_layout(layout_); !violations.empty()) {
    std::string msg = "invalid store layout:";
    for (const auto& v : violations)
      msg += " [" + std::string(to_string(v.kind)) + " " + v.subject + "]";
    fail(ErrorCode::invalid_argument, msg);
  }
  if (layout_.items().empty()) fail(ErrorCode::invalid_argument, "store catalog is empty");
  if (config_.random_count > layout_.items().size())
    fail(ErrorCode::invalid_argument, "random_count exceeds catalog size");

  std::error_code ec;
  std::filesystem::create_directories(config_.data_dir, ec);
  if (ec) fail(ErrorCode::storage, "cannot create data dir '" + config_.data_dir + "': " + ec.message());

  recovered_ = recover(config_.event_log_path(), config_.snapshot_path());
  ratings_ = recovered_.ratings;
  recovered_.ratings = RatingMatrix{};
  for (const auto& [sid, user] : recovered_.sessions)
    next_session_ = std::max(next_session_, session_number(sid.str()) + 1);

  log_ = std::make_unique<EventLog>(config_.event_log_path(),
                                    EventLogOptions{config_.sync_writes});
  if (log_->last_sequence() < recovered_.last_sequence)
    fail(ErrorCode::storage, "snapshot is ahead of the event log");

  item_model_ = std::make_shared<const SimilarityModel>(build_item_model(ratings_));
}

ShopService::SessionEntry& ShopService::find_session(const std::string& id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorCode::not_found, "unknown session '" + id + "'");
  return it->second;
}

const ShopService::SessionEntry& ShopService::find_session(const std::string& id) const {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorCode::not_found, "unknown session '" + id + "'");
  return it->second;
}

std::shared_ptr<const SimilarityModel> ShopService::item_model() const {
  std::lock_guard lock(model_mutex_);
  return item_model_;
}

void ShopService::log_event(SessionEntry& entry, EventKind kind, std::optional<ItemId> item,
                            std::optional<std::string> rec_id, std::vector<ItemId> items,
                            std::optional<Point2> position) {
  EventRecord r;
  r.session_id = entry.session.session_id;
  r.user_id = entry.session.user_id;
  r.timestamp = entry.session.clock();
  r.kind = kind;
  r.item = std::move(item);
  r.rec_id = std::move(rec_id);
  r.items = std::move(items);
  r.position = position;
  log_->append(std::move(r));
  entry.logged = true;
  maybe_snapshot();
}

ReplayState ShopService::live_state() const {
  ReplayState st = recovered_;
  st.ratings = ratings_;
  st.last_sequence = log_->last_sequence();
  for (const auto& [id, entry] : sessions_) {
    if (!entry.logged) continue;
    const Session& s = entry.session;
    st.sessions[s.session_id] = s.user_id;
    st.carts[s.session_id] = s.cart;
    if (s.phase == SessionPhase::checked_out) st.checked_out.insert(s.session_id);
    for (const auto& p : s.panels)
      if (p.kind == PanelKind::recommendation && !p.settled)
        st.open_panels[p.rec_id] = {s.session_id, s.user_id, p.items, p.purchased};
  }
  return st;
}

void ShopService::maybe_snapshot() {
  if (++events_since_snapshot_ < config_.snapshot_every) return;
  write_snapshot(live_state(), config_.snapshot_path());
  events_since_snapshot_ = 0;
}

json ShopService::item_json(const ItemId& id) const {
  const Item* item = layout_.find_item(id);
  if (item == nullptr) return {{"item_id", id.str()}, {"name", id.str()}, {"attributes", json::object()}};
  return {{"item_id", item->item_id.str()},
          {"name", item->name},
          {"shelf_id", item->shelf_id.str()},
          {"attributes", item->attributes}};
}

json ShopService::panel_json(const PanelRecord& panel,
                             const std::vector<double>& scores, std::string_view stage) const {
  const std::size_t page_size = config_.page_size;
  json pages = json::array();
  for (std::size_t start = 0; start < panel.items.size(); start += page_size) {
    json page = json::array();
    for (std::size_t k = start; k < std::min(panel.items.size(), start + page_size); ++k) {
      json entry = item_json(panel.items[k]);
      if (k < scores.size()) entry["score"] = scores[k];
      page.push_back(std::move(entry));
    }
    pages.push_back(std::move(page));
  }
  return {{"rec_id", panel.rec_id},
          {"stage", std::string(stage)},
          {"item_count", panel.items.size()},
          {"page_size", page_size},
          {"page_count", pages.size()},
          {"pages", std::move(pages)}};
}

ApiResponse ShopService::create_session(const json& body) {
  return guarded([&] {
    const UserId user(require_string(body, "user_id"));
    std::lock_guard lock(state_mutex_);
    std::string id = "s" + std::to_string(next_session_++);
    SessionEntry entry;
    entry.session.session_id = SessionId(id);
    entry.session.user_id = user;
    sessions_.emplace(id, std::move(entry));
    return ApiResponse{201, {{"session_id", id}, {"user_id", user.str()}}};
  });
}

ApiResponse ShopService::get_session(const std::string& session_id) const {
  return guarded([&] {
    std::lock_guard lock(state_mutex_);
    const Session& s = find_session(session_id).session;
    json body{{"session_id", s.session_id.str()},
              {"user_id", s.user_id.str()},
              {"phase", std::string(to_string(s.phase))},
              {"cart", ids_json(s.cart)},
              {"last_qualifying_shelf", optional_id(s.last_qualifying_shelf)},
              {"current_shelf", s.stay ? json(s.stay->shelf.str()) : json(nullptr)},
              {"dwell_seconds", s.stay ? s.stay->continuous_dwell() : 0.0}};
    if (const PanelRecord* p = s.current_panel(); p && p->kind == PanelKind::recommendation)
      body["open_panel"] = panel_json(*p, {}, "open");
    else
      body["open_panel"] = nullptr;
    return ApiResponse{200, std::move(body)};
  });
}

ApiResponse ShopService::post_position(const std::string& session_id, const json& body) {
  return guarded([&] {
    const Point2 p{require_number(body, "x"), require_number(body, "y")};
    const double t = require_number(body, "t");
    std::lock_guard lock(state_mutex_);
    SessionEntry& entry = find_session(session_id);
    const auto result = advance(entry.session, p, t, layout_, config_.dwell_seconds);
    log_event(entry, EventKind::position, {}, {}, {}, p);
    return ApiResponse{200,
                       {{"current_shelf", optional_id(result.current_shelf)},
                        {"dwell_seconds", result.dwell_seconds},
                        {"last_qualifying_shelf", optional_id(result.last_qualifying_shelf)},
                        {"qualified", optional_id(result.qualified)}}};
  });
}

ApiResponse ShopService::pickup(const std::string& session_id, const json& body) {
  return guarded([&] {
    const ItemId item(require_string(body, "item_id"));
    std::lock_guard lock(state_mutex_);
    SessionEntry& entry = find_session(session_id);
    const Item& picked = handle_pickup(entry.session, item, layout_);
    log_event(entry, EventKind::pickup, item);
    return ApiResponse{200,
                       {{"panel", "info"},
                        {"item", item_json(picked.item_id)},
                        {"phase", std::string(to_string(entry.session.phase))}}};
  });
}

ApiResponse ShopService::decision(const std::string& session_id, const json& body) {
  return guarded([&] {
    const ItemId item(require_string(body, "item_id"));
    const bool bought = require_bool(body, "bought");
    std::lock_guard lock(state_mutex_);
    SessionEntry& entry = find_session(session_id);
    Session& s = entry.session;
    const auto result = handle_purchase_decision(s, item, bought, layout_, config_.dwell_seconds);
    const AppliedDelta applied = apply_event(ratings_, s.user_id, item, result.outcome);
    entry.applied.push_back(applied);
    log_event(entry, bought ? EventKind::purchase : EventKind::decline, item);

    json out{{"outcome", std::string(to_string(result.outcome))},
             {"applied_delta", applied.delta},
             {"score", applied.score_after},
             {"recommendation_panel", nullptr},
             {"catalog_exhausted", false}};
    if (result.recommendation_requested) {
      const auto model = item_model();
      StrContext ctx;
      ctx.last_qualifying_shelf = s.last_qualifying_shelf;
      ctx.random_count = config_.random_count;
      ctx.random_seed = config_.seed ^ fnv1a(s.session_id.str()) ^
                        (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(s.panels_opened + 1));
      const auto str = icf_str_recommend(*model, ratings_, s.user_id, s.cart, config_.top_n, ctx,
                                         layout_);
      if (str.catalog_exhausted()) {
        out["catalog_exhausted"] = true;
      } else {
        std::vector<ItemId> ids;
        std::vector<double> scores;
        for (const auto& r : str.recommendations) {
          ids.push_back(r.item_id);
          scores.push_back(r.score);
        }
        const std::string rec_id = open_recommendation_panel(s, ids);
        log_event(entry, EventKind::rec_shown, {}, rec_id, ids);
        out["recommendation_panel"] = panel_json(*s.current_panel(), scores, to_string(str.stage));
      }
    }
    out["cart"] = ids_json(s.cart);
    out["phase"] = std::string(to_string(s.phase));
    return ApiResponse{200, std::move(out)};
  });
}

ApiResponse ShopService::panel_purchase(const std::string& session_id, const std::string& rec_id,
                                        const json& body) {
  return guarded([&] {
    const ItemId item(require_string(body, "item_id"));
    std::lock_guard lock(state_mutex_);
    SessionEntry& entry = find_session(session_id);
    handle_panel_purchase(entry.session, rec_id, item, layout_, config_.dwell_seconds);
    log_event(entry, EventKind::rec_accepted, item, rec_id);
    const PanelRecord* panel = entry.session.current_panel();
    return ApiResponse{200,
                       {{"rec_id", rec_id},
                        {"purchased", ids_json(panel->purchased)},
                        {"cart", ids_json(entry.session.cart)},
                        {"phase", std::string(to_string(entry.session.phase))}}};
  });
}

ApiResponse ShopService::panel_dismiss(const std::string& session_id, const std::string& rec_id) {
  return guarded([&] {
    std::lock_guard lock(state_mutex_);
    SessionEntry& entry = find_session(session_id);
    PanelRecord& panel = handle_panel_dismiss(entry.session, rec_id);
    const auto applied = settle_panel(ratings_, entry.session.user_id, panel);
    entry.applied.insert(entry.applied.end(), applied.begin(), applied.end());
    log_event(entry, EventKind::rec_dismissed, {}, rec_id);
    json deltas = json::array();
    for (const auto& d : applied) deltas.push_back(delta_json(d));
    return ApiResponse{200,
                       {{"rec_id", rec_id},
                        {"applied", std::move(deltas)},
                        {"phase", std::string(to_string(entry.session.phase))}}};
  });
}

ApiResponse ShopService::checkout(const std::string& session_id) {
  return guarded([&] {
    std::lock_guard lock(state_mutex_);
    SessionEntry& entry = find_session(session_id);
    json settled = json::array();
    for (PanelRecord* panel : handle_checkout(entry.session)) {
      const auto applied = settle_panel(ratings_, entry.session.user_id, *panel);
      entry.applied.insert(entry.applied.end(), applied.begin(), applied.end());
      settled.push_back(panel->rec_id);
    }
    log_event(entry, EventKind::checkout);
    json cart = json::array();
    for (const auto& id : entry.session.cart) cart.push_back(item_json(id));
    json deltas = json::array();
    for (const auto& d : entry.applied) deltas.push_back(delta_json(d));
    return ApiResponse{200,
                       {{"session_id", session_id},
                        {"cart", std::move(cart)},
                        {"applied_deltas", std::move(deltas)},
                        {"settled_panels", std::move(settled)},
                        {"phase", std::string(to_string(entry.session.phase))}}};
  });
}

ApiResponse ShopService::catalog() const {
  return guarded([&] {
    json items = json::array();
    for (const auto& item : layout_.items()) items.push_back(item_json(item.item_id));
    return ApiResponse{200, {{"name", layout_.name()}, {"items", std::move(items)}}};
  });
}

ApiResponse ShopService::layout() const {
  return guarded([&] { return ApiResponse{200, json::parse(serialize_layout(layout_))}; });
}

namespace {

json model_json(const SimilarityModel& m) {
  return {{"kind", std::string(to_string(m.kind()))},
          {"entity_count", m.entity_count()},
          {"pair_count", m.pair_count()},
          {"source_revision", m.source_revision()},
          {"build_duration_seconds", m.build_seconds()}};
}

}  // namespace

ApiResponse ShopService::rebuild_model(const json& body) {
  return guarded([&] {
    ModelKind kind = ModelKind::item_item;
    if (require_object(body).contains("kind")) {
      auto parsed = model_kind_from_string(require_string(body, "kind"));
      if (!parsed) fail(ErrorCode::invalid_argument, "kind must be item_item or user_user");
      kind = *parsed;
    }
    std::lock_guard build_lock(rebuild_mutex_[kind == ModelKind::item_item ? 0 : 1]);
    RatingMatrix copy;
    {
      std::lock_guard lock(state_mutex_);
      copy = ratings_;
    }
    auto model = std::make_shared<const SimilarityModel>(build_model(copy, kind));
    {
      std::lock_guard lock(model_mutex_);
      (kind == ModelKind::item_item ? item_model_ : user_model_) = model;
    }
    return ApiResponse{200, model_json(*model)};
  });
}

ApiResponse ShopService::model_stats() const {
  return guarded([&] {
    json out;
    {
      std::lock_guard lock(state_mutex_);
      out["ratings"] = {{"users", ratings_.user_count()},
                        {"items", ratings_.item_count()},
                        {"entries", ratings_.entry_count()},
                        {"revision", ratings_.revision()}};
    }
    std::lock_guard lock(model_mutex_);
    out["item_item"] = item_model_ ? model_json(*item_model_) : json(nullptr);
    out["user_user"] = user_model_ ? model_json(*user_model_) : json(nullptr);
    return ApiResponse{200, std::move(out)};
  });
}

RatingMatrix ShopService::ratings_snapshot() const {
  std::lock_guard lock(state_mutex_);
  return ratings_;
}

std::map<SessionId, std::vector<ItemId>> ShopService::carts() const {
  std::lock_guard lock(state_mutex_);
  std::map<SessionId, std::vector<ItemId>> out;
  for (const auto& [id, entry] : sessions_) out[entry.session.session_id] = entry.session.cart;
  return out;
}

}  // namespace shelfrec
