#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "shelfrec/core/errors.hpp"
#include "shelfrec/core/layout.hpp"
#include "shelfrec/core/rating_matrix.hpp"
#include "shelfrec/core/session.hpp"
#include "shelfrec/feedback/scoring.hpp"
#include "shelfrec/persist/event_log.hpp"
#include "shelfrec/persist/replay.hpp"
#include "shelfrec/service/config.hpp"
#include "shelfrec/similarity/similarity_model.hpp"

namespace shelfrec {

struct ApiError {
  std::string code;
  std::string message;
  int http_status = 500;
};

ApiError to_api_error(const Error& error);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Transport-independent implementation of the shopping API. Every method
/// returns a response instead of throwing; errors become
/// {"error": {"code", "message"}} with a 4xx/5xx status.
///
/// Mutations are serialized by one state lock (single writer for ratings and
/// the event log). Model rebuilds copy the ratings, build without the lock
/// and swap the finished snapshot in.
class ShopService {
 public:
  ShopService(ServiceConfig config, StoreLayout layout);

  ApiResponse create_session(const nlohmann::json& body);
  ApiResponse get_session(const std::string& session_id) const;
  ApiResponse post_position(const std::string& session_id, const nlohmann::json& body);
  ApiResponse pickup(const std::string& session_id, const nlohmann::json& body);
  ApiResponse decision(const std::string& session_id, const nlohmann::json& body);
  ApiResponse panel_purchase(const std::string& session_id, const std::string& rec_id,
                             const nlohmann::json& body);
  ApiResponse panel_dismiss(const std::string& session_id, const std::string& rec_id);
  ApiResponse checkout(const std::string& session_id);

  ApiResponse catalog() const;
  ApiResponse layout() const;
  ApiResponse rebuild_model(const nlohmann::json& body);
  ApiResponse model_stats() const;

  const ServiceConfig& config() const noexcept { return config_; }
  const StoreLayout& store() const noexcept { return layout_; }

  RatingMatrix ratings_snapshot() const;
  /// Carts of every session seen by this process.
  std::map<SessionId, std::vector<ItemId>> carts() const;

 private:
  struct SessionEntry {
    Session session;
    std::vector<AppliedDelta> applied;
    bool logged = false;  // has at least one event in the log
  };

  SessionEntry& find_session(const std::string& session_id);
  const SessionEntry& find_session(const std::string& session_id) const;
  void log_event(SessionEntry& entry, EventKind kind, std::optional<ItemId> item = {},
                 std::optional<std::string> rec_id = {}, std::vector<ItemId> items = {},
                 std::optional<Point2> position = {});
  void maybe_snapshot();
  ReplayState live_state() const;
  nlohmann::json panel_json(const PanelRecord& panel,
                            const std::vector<double>& scores, std::string_view stage) const;
  nlohmann::json item_json(const ItemId& id) const;
  std::shared_ptr<const SimilarityModel> item_model() const;

  ServiceConfig config_;
  StoreLayout layout_;

  mutable std::mutex state_mutex_;
  RatingMatrix ratings_;
  std::map<std::string, SessionEntry> sessions_;
  std::unique_ptr<EventLog> log_;
  ReplayState recovered_;  // sessions and panels from before this process
  std::uint64_t next_session_ = 1;
  std::uint64_t events_since_snapshot_ = 0;

  mutable std::mutex model_mutex_;
  std::shared_ptr<const SimilarityModel> item_model_;
  std::shared_ptr<const SimilarityModel> user_model_;
  std::mutex rebuild_mutex_[2];  // one build at a time per kind
};

}  // namespace shelfrec
